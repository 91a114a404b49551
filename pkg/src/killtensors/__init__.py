"""Killing-tensor dimensions on spheres and complex projective spaces."""

__version__ = "0.1.0"
