from setuptools import find_packages, setup

with open("README.md", encoding="utf-8") as fh:
    long_description = fh.read()

with open("requirements.txt", encoding="utf-8") as fh:
    requirements = [line.strip() for line in fh if line.strip() and not line.startswith("#")]

setup(
    name="parcs",
    version="0.1.0",
    author="Indie Quant",
    description="Parallel-acquisition compressed sensing toolkit",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(include=["parcs*", "experiments*"]),
    package_data={"experiments": ["*/config.yaml"]},
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
    ],
    python_requires=">=3.9",
    install_requires=requirements,
    entry_points={"console_scripts": ["parcs=parcs.cli:main"]},
)
