from setuptools import setup, find_packages


## meta data
__version__ = "0.1"
__author__  = "Abdul-Hakeem Shaibu"
__description__ = "noonsim"
__long_description__ = \
'''NOON-state fidelity, interferometer signals and source optimization for
coherent-beam-stimulated two-mode parametric down conversion.
'''


requires = [
    'numpy',
    'scipy',
]

tests_requires = [
    'pytest',
    'pytest-cov'
]

setup(
    name='noonsim',
    version=__version__,
    description=__description__,
    long_description=__long_description__,
    author=__author__,
    author_email='hkmshb@gmail.com',
    url='https://github.com/hkmshb/noonsim.git',
    keywords='quantum optics noon interferometry',
    zip_safe=False,
    packages=find_packages(exclude=['tests', 'tests.*']),
    platforms='any',
    install_requires=requires,
    extras_require={
        'test': tests_requires
    },
    entry_points={
        'console_scripts': [
            'noonsim = noonsim.cli:main',
        ]
    },
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'Natural Language :: English',
        'License :: OSI Approved :: BSD License',
        'Operating System :: OS Independent',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering :: Physics',
    ]
)
