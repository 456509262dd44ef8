from setuptools import setup, find_packages


def main():
    setup(
        name='hypersub',
        description=('Colored, colorless, degree-filtered and binarized '
                     'subgraph statistics for exchangeable hypergraphs, '
                     'with subsampling-based inference.'),
        long_description=open('README.md').read(),
        long_description_content_type='text/markdown',
        url='https://github.com/hypersub/hypersub',
        license='MIT',
        classifiers=[
            'Development Status :: 3 - Alpha',
            'Intended Audience :: Science/Research',
            'License :: OSI Approved :: MIT License',
            'Operating System :: MacOS',
            'Operating System :: POSIX :: Linux',
            'Programming Language :: Python :: 3',
            'Topic :: Scientific/Engineering :: Mathematics',
            'Topic :: Scientific/Engineering :: Information Analysis'
        ],
        keywords='hypergraph subgraph motif u-statistics subsampling network',
        packages=find_packages(exclude=['contrib', 'doc', 'tests*']),
        python_requires='>=3.8',
        install_requires=[
            'sqlalchemy>=1.4', 'numpy>=1.17.0', 'scipy>=1.4',
            'matplotlib>=3.0.0', 'networkx>=2.5', 'tqdm>=4.0'
        ],
        extras_require={
            'test': ['pytest>=6.0', 'hypothesis>=5.0'],
        },
        entry_points={
            'console_scripts': ['hypersub=hypersub.cli:main'],
        },
    )


if __name__ == '__main__':
    main()
