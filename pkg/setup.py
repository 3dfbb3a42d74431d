from setuptools import setup, find_packages

with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

with open("requirements.txt", "r", encoding="utf-8") as fh:
    requirements = [line for line in fh.read().splitlines()
                    if line.strip() and not line.startswith("#") and not line.startswith("pytest")]

setup(
    name="levelmt",
    version="0.1.0",
    description="Multi-level Japanese to English transfer: idiomatic, valency and general patterns",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["tests", "tests.*"]),
    py_modules=["main"],
    include_package_data=True,
    data_files=[
        ("share/levelmt/dict", [
            "data/dict/categories.tsv",
            "data/dict/lexicon.tsv",
            "data/dict/patterns.tsv",
            "data/dict/rewrites.tsv",
        ]),
        ("share/levelmt", ["data/corpus.tsv", "data/grades_sample.tsv"]),
    ],
    classifiers=[
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
    ],
    python_requires=">=3.8",
    install_requires=requirements,
    extras_require={"test": ["pytest>=7.0"]},
    entry_points={
        "console_scripts": [
            "levelmt=main:main",
        ],
    },
)
