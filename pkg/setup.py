from pathlib import Path
from setuptools import setup, find_packages
from re import findall, M

packages = ["rulerlab"]

# The directory containing this file
HERE = Path(__file__).parent.resolve()

# The text of the README file
README = (HERE / "README.md").read_text("utf-8")

# Pull the version from __init__.py so we don't need to maintain it in multiple places
init_txt = (HERE / "src" / packages[0] / "__init__.py").read_text("utf-8")
try:
    version = findall(r"^__version__ = ['\"]([^'\"]+)['\"]\r?$", init_txt, M)[0]
except IndexError:
    raise RuntimeError('Unable to determine version.')


setup(
    name="rulerlab",
    version=version,
    description="Ruler sequence constructions, cross-oracle checks and figures",
    long_description=README,
    long_description_content_type="text/markdown",
    classifiers=[
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
    ],
    package_dir={'':"src"},
    packages=find_packages("src"),
    entry_points={"console_scripts": ["rulerlab=rulerlab.cli:main"]},
    include_package_data=False
)
