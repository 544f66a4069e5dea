"""skewwall: limit shapes, frozen boundaries and correlation kernels of
q^volume random skew plane partitions with piecewise-linear back walls."""

__version__ = "0.1.0"
