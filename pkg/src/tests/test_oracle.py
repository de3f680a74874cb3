import math

import numpy as np
import pytest

from EntropyCore import ChannelBSC, pairwise_exponent_A
from Errors import CodeFormatError, DomainError, ResourceLimit
from Oracle import (BinaryCode, PairwiseGeometry, distance_distribution, distance_matrix, error_histogram,
                    exact_pe_ml, joint_set_logprob, krawtchouk_value, monte_carlo_pe, pairwise_set_logprob,
                    reverse_union_bound)
from OverlapExponent import overlap_exponent_B
from PolyExponents import krawtchouk_exponent_k

HAMMING_GENERATOR = np.array([
    [1, 0, 0, 0, 1, 1, 0],
    [0, 1, 0, 0, 1, 0, 1],
    [0, 0, 1, 0, 0, 1, 1],
    [0, 0, 0, 1, 1, 1, 1],
])


@pytest.fixture
def rep3(data_dir) -> BinaryCode:
    return BinaryCode.load(data_dir / "rep3.txt")


@pytest.fixture
def hamming(data_dir) -> BinaryCode:
    return BinaryCode.load(data_dir / "hamming74.txt")


def test_code_file_parameters(rep3, hamming):
    assert (rep3.n, rep3.M) == (3, 2)
    assert (hamming.n, hamming.M) == (7, 16)
    assert hamming.rate == pytest.approx(4.0 / 7.0)


def test_code_file_reports_the_bad_line(data_dir):
    with pytest.raises(CodeFormatError) as info:
        BinaryCode.load(data_dir / "bad_code.txt")
    assert info.value.line_no == 2


@pytest.mark.parametrize("lines, line_no", [
    (["000", "11"], 2),
    (["010", "010"], 2),
    (["0101"], 1),
])
def test_code_format_errors(lines, line_no):
    with pytest.raises(CodeFormatError) as info:
        BinaryCode.from_strings(lines)
    assert info.value.line_no == line_no


def test_blank_lines_are_skipped():
    assert BinaryCode.from_strings(["", "01", "", "10"]).M == 2


def test_generator_matches_listing(hamming):
    listed = {tuple(w) for w in hamming.words}
    generated = {tuple(w) for w in BinaryCode.from_generator(HAMMING_GENERATOR).words}
    assert listed == generated


def test_random_linear_is_reproducible():
    first = BinaryCode.random_linear(10, 3, seed=7)
    second = BinaryCode.random_linear(10, 3, seed=7)
    assert first.M == 8
    assert np.array_equal(first.words, second.words)


def test_distance_matrix_of_repetition(rep3):
    assert distance_matrix(rep3).tolist() == [[0, 3], [3, 0]]


def test_distance_distribution_of_hamming(hamming):
    dist = distance_distribution(hamming)
    assert dist.average.tolist() == [0, 0, 0, 7, 7, 0, 0, 1]
    assert np.all(dist.local.sum(axis=1) == hamming.M - 1)


def test_exact_repetition_error(rep3):
    assert exact_pe_ml(rep3, 0.1) == pytest.approx(0.028, abs=1e-12)


def test_exact_hamming_error(hamming):
    p = 0.1
    correct = (1 - p) ** 7 + 7 * p * (1 - p) ** 6
    assert exact_pe_ml(hamming, p) == pytest.approx(1.0 - correct, abs=1e-12)


def test_exact_error_at_zero_noise(hamming):
    assert exact_pe_ml(hamming, 0.0) == 0.0


def test_exact_error_nondecreasing_in_p(hamming):
    values = [exact_pe_ml(hamming, p) for p in np.linspace(0.01, 0.49, 12)]
    assert all(b >= a for a, b in zip(values, values[1:]))


def test_error_histogram_counts_integers(rep3):
    # Each word: 3 patterns of weight 2 and 1 of weight 3 decode wrongly
    assert error_histogram(rep3).tolist() == [0, 0, 6, 2]


def test_exact_decoder_length_limit():
    code = BinaryCode(np.vstack([np.zeros(30, dtype=np.uint8), np.ones(30, dtype=np.uint8)]))
    with pytest.raises(ResourceLimit):
        exact_pe_ml(code, 0.1)


def test_exact_decoder_rejects_bad_crossover(rep3):
    with pytest.raises(DomainError):
        exact_pe_ml(rep3, 0.6)


def test_monte_carlo_agrees_with_exact(rep3):
    found = monte_carlo_pe(rep3, 0.1, trials=1_000_000, seed=2024)
    assert found.rng == "Philox"
    assert found.trials == 1_000_000
    assert abs(found.estimate - 0.028) <= 4.0 * found.stderr


def test_monte_carlo_is_reproducible(hamming):
    first = monte_carlo_pe(hamming, 0.05, trials=20_000, seed=11)
    second = monte_carlo_pe(hamming, 0.05, trials=20_000, seed=11)
    assert first == second


def test_monte_carlo_minimum_trials(rep3):
    with pytest.raises(DomainError):
        monte_carlo_pe(rep3, 0.1, trials=100, seed=0)


def test_reverse_union_bound_lies_below_exact():
    code = BinaryCode.random_linear(12, 4, seed=3)
    p = 0.1
    exact = exact_pe_ml(code, p)
    for w in range(1, code.n + 1):
        assert reverse_union_bound(code, p, w) <= exact + 1e-12


def test_reverse_union_bound_of_repetition(rep3):
    # One neighbour: the bound is the exact pairwise error
    assert reverse_union_bound(rep3, 0.1, 3) == pytest.approx(0.028, abs=1e-12)
    assert reverse_union_bound(rep3, 0.1, 2) == 0.0


def test_reverse_union_bound_length_limit():
    code = BinaryCode.random_linear(14, 3, seed=1)
    with pytest.raises(ResourceLimit):
        reverse_union_bound(code, 0.1, 4)


def test_geometry_rounding():
    geom = PairwiseGeometry.from_fractions(400, 0.2, 0.1, 0.1)
    assert (geom.w, geom.l, geom.t) == (80, 40, 40 + 32)


def test_geometry_rejects_odd_distance():
    with pytest.raises(DomainError):
        PairwiseGeometry(n=10, w=3, l=0, t=2)


@pytest.mark.parametrize("omega", [0.1, 0.2, 0.3])
def test_pairwise_probability_approaches_A(omega):
    p = 0.1
    geom = PairwiseGeometry.from_fractions(400, omega, 0.0, p)
    target = pairwise_exponent_A(geom.w / 400, ChannelBSC(p))
    assert pairwise_set_logprob(geom, p) == pytest.approx(target, abs=0.02)


@pytest.mark.parametrize("omega, lam", [(0.2, 0.2), (0.3, 0.2), (0.25, 0.25)])
def test_conditional_overlap_approaches_B(omega, lam):
    p = 0.1
    geom = PairwiseGeometry.from_fractions(600, omega, lam, p)
    finite = joint_set_logprob(geom, p) - pairwise_set_logprob(geom, p)
    target = overlap_exponent_B(geom.w / 600, geom.l / 600, ChannelBSC(p))
    assert finite == pytest.approx(target, abs=0.03)


def test_identical_events_have_zero_conditional():
    geom = PairwiseGeometry.from_fractions(200, 0.2, 0.0, 0.1)
    assert joint_set_logprob(geom, 0.1) == pytest.approx(pairwise_set_logprob(geom, 0.1), abs=1e-12)


@pytest.mark.parametrize("tau, omega", [(0.11, 0.15), (0.2, 0.05), (0.05, 0.2)])
def test_krawtchouk_values_approach_k(tau, omega):
    n = 400
    k, x = round(tau * n), round(omega * n)
    assert krawtchouk_value(n, k, x).normalized(n) == pytest.approx(krawtchouk_exponent_k(k / n, x / n), abs=0.02)


def test_krawtchouk_small_cases():
    assert krawtchouk_value(5, 2, 0).log2_magnitude == pytest.approx(math.log2(10))
    assert krawtchouk_value(4, 2, 1).sign == 0
    negative = krawtchouk_value(6, 1, 4)
    assert (negative.sign, negative.log2_magnitude) == (-1, pytest.approx(1.0))
