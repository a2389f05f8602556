import pathlib
import re
import setuptools

HERE = pathlib.Path(__file__).parent

README = (HERE / "README.md").read_text(encoding="utf8")

with open(HERE / "brauerheight/__init__.py") as file:
    version = re.search(
        r'^__version__\s*=\s*[\'"]([^\'"]*)[\'"]', file.read(), re.MULTILINE
    ).group(1)

setuptools.setup(
    name="brauerheight",
    author="brauerheight developers",
    version=version,
    packages=setuptools.find_packages(exclude=("tests", "tests.*")),
    license="MIT",
    description="Heights of formal groups and formal Brauer groups in exact arithmetic",
    long_description=README,
    long_description_content_type="text/markdown",
    include_package_data=True,
    python_requires=">=3.8",
    zip_safe=False,
    install_requires=["numpy", "galois", "sympy", "typing_extensions"],
    extras_require={"speedup": ["orjson==3.8.12"]},
    entry_points={"console_scripts": ["brauerheight=brauerheight.cli:main"]},
    test_suite="tests",
    classifiers=[
        "License :: OSI Approved :: MIT License",
        "Intended Audience :: Science/Research",
        "Natural Language :: English",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: Implementation :: CPython",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Topic :: Software Development :: Libraries :: Python Modules",
        "Typing :: Typed",
    ],
)
