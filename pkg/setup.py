import setuptools

# PyPi upload Command
# rm -r dist ; python setup.py sdist ; python -m twine upload dist/*

manifest: dict = {
    "name": "ReesLab",
    "license": "MIT",
    "author": "ReesLab Developers",
    "version": "1.0.0",
    "email": "maintainers@reeslab.dev"
}

if __name__ == '__main__':
    with open("README.md", "r", encoding="utf-8") as fh:
        long_description = fh.read()

    setuptools.setup(
        name=manifest["name"],
        packages=setuptools.find_packages(exclude=["tests", "tests.*"]),
        package_data={"ReesLab.client": ["templates/*.jinja2"]},
        version=manifest["version"],
        license=manifest["license"],
        description="Exact Rees modules, toric vector bundles and Frolicher spectral sequences",
        author=manifest["author"],
        author_email=manifest["email"],
        long_description=long_description,
        long_description_content_type="text/markdown",
        keywords=["rees module", "filtration", "spectral sequence", "toric vector bundle", "exact arithmetic"],
        install_requires=[
            "sympy>=1.12",  # Exact Gaussian-rational matrices (DomainMatrix over QQ_I)
            "mashumaro>=3.5",  # JSON Deserialization
            "pyee>=9.0.4",
            "jinja2>=3.0",
            "python-dotenv>=1.0",
        ],
        entry_points={
            "console_scripts": [
                "rlab = ReesLab.__main__:main"
            ]
        },
        classifiers=[
            "Development Status :: 4 - Beta",
            "Intended Audience :: Science/Research",
            "Topic :: Scientific/Engineering :: Mathematics",
            "License :: OSI Approved :: MIT License",
            "Natural Language :: English",
            "Programming Language :: Python :: 3.8",
            "Programming Language :: Python :: 3.9",
            "Programming Language :: Python :: 3.10",
            "Programming Language :: Python :: 3.11",
        ]
    )
