"""
Setup script for the twobit-ldpc package
"""

from setuptools import setup, find_packages

with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

setup(
    name="twobit-ldpc",
    version="0.1.0",
    author="twobit-ldpc contributors",
    description="Two-bit bit flipping decoders for LDPC codes on the binary symmetric channel, with failure analysis",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(include=["twobit_ldpc", "twobit_ldpc.*"]),
    package_data={"twobit_ldpc": ["py.typed", "data/*.alist"]},
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Programming Language :: Python :: 3.13",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Typing :: Typed",
    ],
    python_requires=">=3.10",
    install_requires=[
        "pydantic>=2.0.0",
        "numpy>=1.24.0",
        "scipy>=1.10.0",
        "networkx>=3.0",
        "joblib>=1.2.0",
        "tqdm>=4.64.0",
    ],
    extras_require={
        "dev": [
            "pytest>=7.0.0",
            "pytest-cov>=4.0.0",
            "black>=22.0.0",
            "isort>=5.0.0",
            "flake8>=5.0.0",
            "mypy>=1.0.0",
        ],
    },
    entry_points={
        "console_scripts": ["twobit-ldpc=twobit_ldpc.cli:main"],
    },
    keywords="ldpc bit-flipping error-correction bsc tanner-graph trapping-sets",
)
