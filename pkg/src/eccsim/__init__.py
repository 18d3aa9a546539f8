"""Adaptive error-control-coding simulator for wireless sensor networks.

Reed-Solomon and convolutional codecs, BER/coding-gain measurement,
free-space link budget, critical-distance encoder selection and a
multi-round sensor-field energy simulation.
"""

__version__ = "0.1.0"
