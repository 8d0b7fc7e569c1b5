import setuptools

with open('README.md', 'r', encoding='utf8') as f:
    long_description = f.read()

setuptools.setup(
    name='django-symmul',
    version='0.1.0',
    description='Certified bounds and verified constructions for symmetric multiplication in finite field extensions.',
    license='MIT',
    long_description=long_description,
    long_description_content_type='text/markdown',
    packages=setuptools.find_packages(exclude=('tests', 'tests.*')),
    include_package_data=True,
    python_requires='>=3.8',
    install_requires=[
        'Django>=3.1',
        'numpy',
        'sympy',
    ],
    extras_require={
        'sentry': ['sentry-sdk'],
    },
    entry_points={
        'console_scripts': ['symmul=symmul.__main__:main'],
    },
    classifiers=[
        'Development Status :: 4 - Beta',
        'Environment :: Console',
        'Topic :: Scientific/Engineering :: Mathematics',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: MIT License',
        'Operating System :: OS Independent',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3 :: Only',
        'Programming Language :: Python :: 3.8',
        'Framework :: Django',
        'Framework :: Django :: 3.1',
    ],
)
