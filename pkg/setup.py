from setuptools import setup

# Setup configuration for the reliability toolkit
setup(
    name='reliability',  # Name of the package
    version='0.1.0',  # Version of the package
    package_dir={'': 'src'},  # Modules live flat under src/
    py_modules=[
        'AST', 'AWGNBounds', 'BSCBounds', 'BSCLandmarks', 'Compiler', 'DistanceProfile', 'EntropyCore',
        'Environment', 'Errors', 'LPRegion', 'Lexer', 'Numerics', 'Oracle', 'OverlapExponent', 'Parser',
        'PolyExponents', 'ProfileJIT', 'Settings', 'Token', 'reliability',
    ],
    python_requires='>=3.10',  # match statements
    install_requires=[
        'llvmlite',  # JIT for distance-profile scripts
        'numpy>=2.0',  # Grids, bit counting and the Philox generator
        'scipy',  # Entropy kernels, quadrature and log-gamma
    ],
    extras_require={
        'test': ['pytest'],
    },
    entry_points={
        'console_scripts': [
            'reliability=reliability:main',  # Entry point for the command line interface
        ],
    },
    description='Bounds on the reliability function of the BSC and the Gaussian channel',  # Brief description of the package
)
