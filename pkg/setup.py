#!/usr/bin/env python3
"""
Weak-MZI Setup Configuration
For pip distribution: pip install weak-mzi
"""

from setuptools import setup, find_packages
import os

# Read README for long description
def read_file(filename):
    filepath = os.path.join(os.path.dirname(__file__), filename)
    if os.path.exists(filepath):
        with open(filepath, 'r', encoding='utf-8') as f:
            return f.read()
    return ''

setup(
    name='weak-mzi',
    version='1.0.0',
    description='Nested Mach-Zehnder interferometer weak-measurement simulator with quad-cell detection and spectral verification.',
    long_description=read_file('README.md'),
    long_description_content_type='text/markdown',
    license='MIT',
    classifiers=[
        # Development Status
        'Development Status :: 4 - Beta',

        # Intended Audience
        'Intended Audience :: Science/Research',
        'Intended Audience :: Education',

        # License
        'License :: OSI Approved :: MIT License',

        # Programming Languages
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11',
        'Programming Language :: Python :: 3.12',

        # Topics
        'Topic :: Scientific/Engineering :: Physics',

        # Operating Systems
        'Operating System :: OS Independent',
    ],
    keywords=[
        'interferometry',
        'mach-zehnder',
        'weak-measurement',
        'quad-cell-detector',
        'power-spectrum',
        'simulation',
    ],
    packages=find_packages(exclude=['tests', 'docs', 'examples']),
    python_requires='>=3.8',
    install_requires=[
        'numpy>=1.22.0',
        'scipy>=1.8.0',
        'python-dotenv>=1.0.0',
        'pydantic>=2.0.0',
    ],
    extras_require={
        'dev': [
            'pytest>=7.0.0',
            'pytest-cov>=4.0.0',
            'black>=23.0.0',
            'flake8>=6.0.0',
            'mypy>=1.0.0',
        ],
    },
    entry_points={
        'console_scripts': [
            'weakmzi=weakmzi.cli:main',
        ],
    },
    include_package_data=True,
    package_data={
        'weakmzi': ['presets/*.json', 'presets/*.md'],
    },
    zip_safe=False,
    platforms='any',
)
