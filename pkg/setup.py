import setuptools
# Note: scipy>=1.11 is required for batched scipy.linalg.lu.
setuptools.setup(
    name="BenfordFrequency",
    version="0.1",
    packages=setuptools.find_packages(exclude=["tests", "examples*"]),
    install_requires=["numpy", "scipy>=1.11", "pandas", "absl-py"],
    entry_points={
        "console_scripts": ["benford-frequency=benford_frequency.cli:run_main"],
    },
)
