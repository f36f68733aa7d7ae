#!/usr/bin/env python3

from setuptools import setup

setup(name='droplet-wavetrack',
      version='0.1',
      description='Wave front tracking of a liquid droplet in a gas and '
                  'its incompressible limit',
      packages=['droplet', 'droplet.fronts', 'droplet.study'],
      scripts=['wavetrack.py', 'sweep_summary.py'],
      install_requires=['numpy', 'scipy'],
      tests_require=['pynose'],
      )
