from setuptools import setup, find_packages

setup(
    name="qtorus-orbifold",
    version="1.0.0",
    description="Exact Hochschild and Poisson cohomology of quantum-torus orbifolds",
    packages=find_packages(exclude=("tests",)),
    py_modules=["main", "reproduce"],
    python_requires=">=3.10",
    install_requires=[
        "numpy>=1.24.0",
        "sympy>=1.12",
    ],
    extras_require={
        "test": ["pytest>=7.0", "hypothesis>=6.0"],
    },
    entry_points={
        "console_scripts": [
            "qtorus-orbifold=main:main",
            "qtorus-orbifold-reproduce=reproduce:run_reproduction",
        ],
    },
)
