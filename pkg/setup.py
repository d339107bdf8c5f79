from setuptools import find_packages, setup

setup(
    name="dehnlab",
    packages=find_packages(where="src"),
    package_dir={"": "src"},
    # a|b|c|rc|alpha|beta|pre|preview
    version="0.0.1a1",
    python_requires=">=3.8",
    install_requires=["numpy>=1.20", "scipy>=1.7", "crummycm", "PyYAML", "toposort"],
    extras_require={"tests": ["pytest", "hypothesis"]},
    entry_points={"console_scripts": ["dehnlab=dehnlab.run.cli:main"]},
)
