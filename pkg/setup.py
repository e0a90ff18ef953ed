# coding: utf-8
from __future__ import absolute_import, division, print_function

import re
from collections import defaultdict

from setuptools import setup, find_packages


INIT_FILE = 'blockfusion/__init__.py'
init_data = open(INIT_FILE).read()

metadata = dict(re.findall("__([a-z]+)__ = '([^']+)'", init_data))

AUTHOR_EMAIL = metadata['author']
VERSION = metadata['version']
LICENSE = metadata['license']
DESCRIPTION = metadata['description']

AUTHOR, EMAIL = re.match(r'(.*) <(.*)>', AUTHOR_EMAIL).groups()

requires = [
    'click',
    'logbook>=0.10.0',
    'numpy>=1.17',
    'pandas',
    'represent>=1.4.0',
]


extras_require = defaultdict(set)

extras_require['test'] = [
    'pytest>=2.7.3',
]

extras_require['dev'] = [
    'coverage',
    'doc8',
    'flake8',
    'flake8-coding',
    'flake8-future-import',
    'pep8-naming',
    'pyenchant',
    'sphinx',
    'sphinx_rtd_theme',
    'sphinxcontrib-spelling',
    'tox',
    'pytest>=2.7.3',
]

extras_require = dict(extras_require)


setup(
    name='blockfusion',
    version=VERSION,
    description=DESCRIPTION,
    long_description=open('README.rst').read(),
    author=AUTHOR,
    author_email=EMAIL,
    packages=find_packages(exclude=['tests']),
    classifiers=[
        'Development Status :: 3 - Alpha',
        'License :: OSI Approved :: MIT License',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
    license=LICENSE,
    install_requires=requires,
    extras_require=extras_require,
    python_requires='>=3.6',
    entry_points={
        'console_scripts': [
            'blockfusion=blockfusion.__main__:main'
        ]
    })
