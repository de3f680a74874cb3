# Finite-length ground truth: ML decoding error probability, distance distributions and set probabilities
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from numpy.random import Generator, Philox, SeedSequence
from scipy.special import gammaln, logsumexp

from EntropyCore import LN2
from Errors import CodeFormatError, DomainError, ResourceLimit
from Settings import (CHUNK_CELLS, ENUMERATION_BUDGET, EXACT_MAX_LENGTH, MC_BLOCK, MC_MIN_TRIALS,
                      REVERSE_UNION_MAX_LENGTH, RNG_ALGORITHM)

PACKED_MAX_LENGTH: int = 64  # Words up to this length are packed into one uint64


@dataclass(frozen=True, eq=False)
class BinaryCode:
    words: np.ndarray  # (M, n) array of 0/1 entries

    def __post_init__(self) -> None:
        words = np.asarray(self.words, dtype=np.uint8)
        if words.ndim != 2 or words.shape[1] == 0:
            raise DomainError(f"A code is a 2-D array of codewords, got shape {words.shape}")
        if np.any(words > 1):
            raise DomainError("Codeword entries must be 0 or 1")
        if words.shape[0] < 2:
            raise DomainError(f"A code needs at least 2 codewords, got {words.shape[0]}")
        if len(np.unique(words, axis=0)) != words.shape[0]:
            raise DomainError("Codewords must be distinct")
        object.__setattr__(self, "words", words)

    @property
    def n(self) -> int:
        return int(self.words.shape[1])

    @property
    def M(self) -> int:
        return int(self.words.shape[0])

    @property
    def rate(self) -> float:
        return math.log2(self.M) / self.n

    @property
    def packed(self) -> np.ndarray:
        """Each codeword as a uint64 with position j in bit j."""
        if self.n > PACKED_MAX_LENGTH:
            raise ResourceLimit(f"Packed form needs n <= {PACKED_MAX_LENGTH}, got {self.n}")
        weights = np.left_shift(np.uint64(1), np.arange(self.n, dtype=np.uint64))
        return (self.words.astype(np.uint64) * weights).sum(axis=1, dtype=np.uint64)

    @classmethod
    def from_strings(cls, lines: list[str]) -> "BinaryCode":
        """
        Parses codewords written as strings of '0'/'1', one per line; blank lines are skipped.

        Raises:
            CodeFormatError: With the 1-based line of the first malformed, mismatched or repeated word.
        """
        rows, seen, n = [], set(), None
        for line_no, raw in enumerate(lines, start=1):
            word = raw.strip()
            if not word:
                continue

            if set(word) - {"0", "1"}:
                raise CodeFormatError(f"'{word}' contains characters other than 0 and 1", line_no)
            if n is not None and len(word) != n:
                raise CodeFormatError(f"length {len(word)} differs from the first codeword's length {n}", line_no)
            if word in seen:
                raise CodeFormatError(f"codeword {word} is repeated", line_no)

            n = len(word)
            seen.add(word)
            rows.append([int(c) for c in word])

        if len(rows) < 2:
            raise CodeFormatError(f"a code needs at least 2 codewords, found {len(rows)}", max(len(lines), 1))

        return cls(np.array(rows, dtype=np.uint8))

    @classmethod
    def load(cls, path: str | Path) -> "BinaryCode":
        with open(path, "r") as file:
            return cls.from_strings(file.read().splitlines())

    @classmethod
    def from_generator(cls, generator: np.ndarray) -> "BinaryCode":
        """All 2^k codewords mG of a k x n generator matrix over GF(2)."""
        generator = np.asarray(generator, dtype=np.uint8) % 2
        k = generator.shape[0]
        messages = (np.arange(2 ** k)[:, None] >> np.arange(k)[None, :]) & 1
        return cls(((messages @ generator) % 2).astype(np.uint8))

    @classmethod
    def random_linear(cls, n: int, k: int, seed: int, attempts: int = 64) -> "BinaryCode":
        """Linear [n, k] code with a uniformly drawn full-rank generator; deterministic given seed."""
        if not 0 < k <= n:
            raise DomainError(f"random_linear needs 0 < k <= n, got n={n}, k={k}")

        rng = Generator(Philox(seed))
        for _ in range(attempts):
            generator = rng.integers(0, 2, size=(k, n), dtype=np.uint8)
            try:
                return cls.from_generator(generator)
            except DomainError:
                continue  # Rank deficient

        raise DomainError(f"No full-rank [{n}, {k}] generator in {attempts} draws")


@dataclass(frozen=True)
class DistanceDistribution:
    local: np.ndarray  # (M, n+1) integer counts B_w^i
    average: np.ndarray  # (n+1) averages B_w


@dataclass(frozen=True)
class MonteCarloResult:
    estimate: float
    stderr: float  # Binomial standard error of the estimate
    trials: int
    errors: int
    rng: str = RNG_ALGORITHM


@dataclass(frozen=True)
class PairwiseGeometry:
    """Integer distances of a codeword triple: w = d_ij, l = d_jk and the level t of X_ij."""
    n: int
    w: int
    l: int
    t: int

    def __post_init__(self) -> None:
        if self.w % 2 or self.l % 2:
            raise DomainError(f"w and l must be even, got w={self.w}, l={self.l}")
        if not 0 <= self.w <= self.n:
            raise DomainError(f"w={self.w} lies outside [0, n={self.n}]")
        if not 0 <= self.l <= 2 * self.w:
            raise DomainError(f"l={self.l} must satisfy 0 <= l <= 2w={2 * self.w}")
        if not 0 <= self.t <= self.n:
            raise DomainError(f"t={self.t} lies outside [0, n={self.n}]")

    @classmethod
    def from_fractions(cls, n: int, omega: float, lam: float, p: float) -> "PairwiseGeometry":
        """Rounds omega*n and lam*n to even integers and p(n - w) half to even."""
        w = 2 * round(omega * n / 2.0)
        l = 2 * round(lam * n / 2.0)
        return cls(n=n, w=w, l=l, t=w // 2 + round(p * (n - w)))


@dataclass(frozen=True)
class SignedLog:
    """A real number as sign * 2^log2_magnitude; zero has sign 0 and magnitude -inf."""
    sign: int
    log2_magnitude: float

    def normalized(self, n: int) -> float:
        return self.log2_magnitude / n


def distance_matrix(code: BinaryCode) -> np.ndarray:
    """Pairwise Hamming distances between codewords."""
    if code.n <= PACKED_MAX_LENGTH:
        packed = code.packed
        return np.bitwise_count(packed[:, None] ^ packed[None, :]).astype(np.int64)
    return np.count_nonzero(code.words[:, None, :] != code.words[None, :, :], axis=2)


def distance_distribution(code: BinaryCode) -> DistanceDistribution:
    """
    Local distance distributions B_w^i and their average B_w.

    Args:
        code (BinaryCode): The code.

    Returns:
        DistanceDistribution: Every row of local sums to M - 1, as does average.
    """
    M, width = code.M, code.n + 1
    offsets = distance_matrix(code) + width * np.arange(M)[:, None]
    local = np.bincount(offsets.ravel(), minlength=M * width).reshape(M, width)
    local[:, 0] -= 1  # Each word is at distance 0 from itself

    return DistanceDistribution(local=local, average=local.mean(axis=0))


def _closest_other(distances: np.ndarray) -> np.ndarray:
    """For every cell (y, i): min over j != i of d(x_j, y)."""
    two = np.partition(distances, 1, axis=1)[:, :2]
    return np.where(distances == two[:, [0]], two[:, [1]], two[:, [0]])


def _likelihoods(n: int, p: float) -> np.ndarray:
    """P(y | x) for each distance w = d(x, y)."""
    w = np.arange(n + 1)
    return p ** w * (1.0 - p) ** (n - w)


def _check_probability(p: float) -> None:
    if not 0.0 <= p < 0.5:
        raise DomainError(f"Crossover probability must satisfy 0 <= p < 1/2, got {p}")


def error_histogram(code: BinaryCode) -> np.ndarray:
    """
    Counts received words decoded in error, by their distance to the sent codeword.

    Ties (some other codeword at distance <= d(x_i, y)) count as errors. Integer tallies are
    summed chunk by chunk, so the result does not depend on the chunking.

    Returns:
        np.ndarray: (n+1) counts summed over all codewords.
    """
    if code.n > EXACT_MAX_LENGTH or 2 ** code.n > ENUMERATION_BUDGET:
        raise ResourceLimit(f"Exact decoding enumerates 2^{code.n} words; the limit is n <= {EXACT_MAX_LENGTH}")

    packed = code.packed
    width = code.n + 1
    chunk = max(CHUNK_CELLS // code.M, 1)
    total = np.zeros(width, dtype=np.int64)

    for start in range(0, 2 ** code.n, chunk):
        received = np.arange(start, min(start + chunk, 2 ** code.n), dtype=np.uint64)
        distances = np.bitwise_count(received[:, None] ^ packed[None, :]).astype(np.int64)
        wrong = _closest_other(distances) <= distances
        total += np.bincount(distances[wrong], minlength=width)

    return total


def exact_pe_ml(code: BinaryCode, p: float) -> float:
    """
    Exact block error probability of maximum-likelihood decoding over the BSC.

    Args:
        code (BinaryCode): Code with n <= EXACT_MAX_LENGTH.
        p (float): Crossover probability.

    Returns:
        float: (1/M) sum_i P(error | x_i sent), ties counted as errors.
    """
    _check_probability(p)
    return float(error_histogram(code) @ _likelihoods(code.n, p)) / code.M


def _received_distances(code: BinaryCode, received: np.ndarray) -> np.ndarray:
    if code.n <= PACKED_MAX_LENGTH:
        weights = np.left_shift(np.uint64(1), np.arange(code.n, dtype=np.uint64))
        packed_y = (received.astype(np.uint64) * weights).sum(axis=1, dtype=np.uint64)
        return np.bitwise_count(packed_y[:, None] ^ code.packed[None, :]).astype(np.int64)
    return np.count_nonzero(received[:, None, :] != code.words[None, :, :], axis=2)


def monte_carlo_pe(code: BinaryCode, p: float, trials: int, seed: int) -> MonteCarloResult:
    """
    Simulates ML decoding of uniformly chosen codewords sent over the BSC.

    Trials run in blocks of MC_BLOCK, each with its own Philox stream spawned from the seed;
    error tallies are integers, so the estimate is fully determined by (seed, trials).

    Args:
        code (BinaryCode): The code.
        p (float): Crossover probability.
        trials (int): Number of transmissions, at least MC_MIN_TRIALS.
        seed (int): Root seed.

    Returns:
        MonteCarloResult: Estimate, standard error and the generator name.
    """
    _check_probability(p)
    if trials < MC_MIN_TRIALS:
        raise DomainError(f"Monte Carlo needs at least {MC_MIN_TRIALS} trials, got {trials}")

    blocks = math.ceil(trials / MC_BLOCK)
    errors = 0

    for b, child in enumerate(SeedSequence(seed).spawn(blocks)):
        rng = Generator(Philox(child))
        size = min(MC_BLOCK, trials - b * MC_BLOCK)

        sent = rng.integers(0, code.M, size=size)
        noise = (rng.random((size, code.n)) < p).astype(np.uint8)
        distances = _received_distances(code, code.words[sent] ^ noise)

        own = distances[np.arange(size), sent]
        others = np.where(np.arange(code.M)[None, :] == sent[:, None], code.n + 1, distances)
        errors += int(np.count_nonzero(others.min(axis=1) <= own))

    estimate = errors / trials
    return MonteCarloResult(
        estimate=estimate,
        stderr=math.sqrt(estimate * (1.0 - estimate) / trials),
        trials=trials,
        errors=errors,
    )


def reverse_union_bound(code: BinaryCode, p: float, w: int) -> float:
    """
    Lower bound on P_e from the neighbours at distance w:
    (1/M) sum_i [sum_j P_i(X_ij) - sum_{j != k} P_i(X_ij and X_ik)]_+ with X_ij = {y: d_jy <= d_iy}.

    Args:
        code (BinaryCode): Code with n <= REVERSE_UNION_MAX_LENGTH.
        p (float): Crossover probability.
        w (int): Neighbour distance.

    Returns:
        float: The bound, 0 when no codeword has neighbours at distance w.
    """
    _check_probability(p)
    if code.n > REVERSE_UNION_MAX_LENGTH:
        raise ResourceLimit(f"reverse_union_bound enumerates 2^n words; the limit is n <= {REVERSE_UNION_MAX_LENGTH}")

    pairwise = distance_matrix(code)
    received = ((np.arange(2 ** code.n)[:, None] >> np.arange(code.n)[None, :]) & 1).astype(np.uint8)
    distances = _received_distances(code, received)
    likelihood = _likelihoods(code.n, p)

    total = 0.0
    for i in range(code.M):
        neighbours = np.flatnonzero(pairwise[i] == w)
        if len(neighbours) == 0:
            continue

        c = np.count_nonzero(distances[:, neighbours] <= distances[:, [i]], axis=1)
        # c - c(c-1): single events minus ordered pairwise overlaps
        total += max(float(likelihood[distances[:, i]] @ (2 * c - c * c)), 0.0)

    return total / code.M


def _log_binom(n: np.ndarray | int, k: np.ndarray | int) -> np.ndarray:
    """Natural log of C(n, k); -inf outside 0 <= k <= n."""
    n, k = np.asarray(n, dtype=float), np.asarray(k, dtype=float)
    inside = (k >= 0) & (k <= n)
    with np.errstate(invalid="ignore"):
        value = gammaln(n + 1.0) - gammaln(k + 1.0) - gammaln(n - k + 1.0)
    return np.where(inside, value, -np.inf)


def _log_point(geom: PairwiseGeometry, p: float) -> float:
    """Natural log of p^t (1-p)^(n-t)."""
    return geom.t * math.log(p) + (geom.n - geom.t) * math.log1p(-p)


def _check_open_probability(p: float) -> None:
    if not 0.0 < p < 0.5:
        raise DomainError(f"Crossover probability must satisfy 0 < p < 1/2, got {p}")


def pairwise_set_logprob(geom: PairwiseGeometry, p: float) -> float:
    """(1/n) log2 P_i(X_ij) with |X_ij| = C(w, w/2) C(n-w, t-w/2); -inf when the level is unreachable."""
    _check_open_probability(p)
    m = geom.t - geom.w // 2
    if not 0 <= m <= geom.n - geom.w:
        return -math.inf

    log_count = float(_log_binom(geom.w, geom.w // 2) + _log_binom(geom.n - geom.w, m))
    return (log_count + _log_point(geom, p)) / LN2 / geom.n


def joint_set_logprob(geom: PairwiseGeometry, p: float) -> float:
    """
    (1/n) log2 P_i(X_ij and X_ik), summing over the overlap m of the two flip patterns:
    sum_m C(l/2, m)^2 C(w - l/2, w/2 - m) C(n - w - l/2, p(n-w) - m) p^t (1-p)^(n-t).
    """
    _check_open_probability(p)
    half_l, half_w = geom.l // 2, geom.w // 2
    level = geom.t - half_w  # p(n - w) after rounding

    m = np.arange(0, max(min(half_l, level), -1) + 1)
    terms = (2.0 * _log_binom(half_l, m) + _log_binom(geom.w - half_l, half_w - m)
             + _log_binom(geom.n - geom.w - half_l, level - m))

    if len(terms) == 0 or not np.any(np.isfinite(terms)):
        return -math.inf

    return (float(logsumexp(terms)) + _log_point(geom, p)) / LN2 / geom.n


def krawtchouk_value(n: int, k: int, x: int) -> SignedLog:
    """
    Binary Krawtchouk polynomial K_k(x) of length n, evaluated exactly with integer arithmetic.

    Uses (j+1) K_{j+1} = (n - 2x) K_j - (n - j + 1) K_{j-1}, K_0 = 1, K_1 = n - 2x.
    """
    if not (0 <= k <= n and 0 <= x <= n):
        raise DomainError(f"krawtchouk_value needs 0 <= k, x <= n, got n={n}, k={k}, x={x}")

    previous, current = 1, n - 2 * x
    if k == 0:
        current = 1
    for j in range(1, k):
        previous, current = current, ((n - 2 * x) * current - (n - j + 1) * previous) // (j + 1)

    if current == 0:
        return SignedLog(sign=0, log2_magnitude=-math.inf)

    return SignedLog(sign=1 if current > 0 else -1, log2_magnitude=math.log2(abs(current)))
