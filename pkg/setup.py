from setuptools import setup, find_packages

def parse_requirements(filename):
    with open(filename, 'r') as file:
        return [line.strip() for line in file if line.strip()]
    
setup(
    name='ugvdefend',
    version='0.1.0',
    description='UGVDefend trains and evaluates reinforcement-learning agents that respond to cyber attacks on a simulated unmanned ground vehicle.',
    packages=find_packages(exclude=['tests', 'tests.*']),
    install_requires=parse_requirements("requirements.txt"),
    extras_require={'test': ['hypothesis>=6.0']},
    entry_points={'console_scripts': ['ugvdefend=ugvdefend.harness.cli:main']},
    python_requires='>=3.8',
)
