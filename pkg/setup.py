#!/usr/bin/env python
# -*- coding: utf-8 -*-


# Always prefer setuptools over distutils
from setuptools import setup, find_packages
# To use a consistent encoding
from codecs import open


with open('README.md', encoding='utf-8') as readme_file:
    readme = readme_file.read()

setup(
    name='structcon',
    version='0.3.0',
    description="Graph-theoretic structural controllability checks for bilinear systems on SO(n), GL+(n) and SU(n)",
    long_description=readme,
    long_description_content_type='text/markdown',
    packages=find_packages(exclude=['tests', 'tests.*']),
    include_package_data=True,
    package_data={
        'structcon': ['templates/structcon/*', 'specs/*.json'],
    },
    install_requires=[
        'django>=3.2',
        'networkx>=2.6',
        'sympy>=1.9',
    ],
    extras_require={
        'test': ['pytest', 'hypothesis'],
    },
    entry_points={
        'console_scripts': ['structcon = structcon.cli:main'],
    },
    python_requires='>=3.8',
    license="GPLv3",
    zip_safe=False,
    keywords='structural controllability lie algebra bilinear',
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Framework :: Django',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: GNU General Public License v3 (GPLv3)',
        'Natural Language :: English',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering :: Mathematics',
    ]
)
