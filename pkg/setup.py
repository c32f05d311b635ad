from setuptools import setup

setup(
    name="libtrisub",
    version="0.1",
    description="Exact enumeration and classification of angle-rational triangle "
    "subdivisions by an interior point",
    packages=["trisub", "trisub.job", "trisub.util"],
    package_data={"trisub": ["config-default.yaml"]},
    install_requires=["pyyaml", "numpy", "pandas", "mpmath", "svgwrite"],
    python_requires=">=3.8",
    zip_safe=False,
    entry_points={"console_scripts": ["trisub = trisub.cli:main",],},
)
