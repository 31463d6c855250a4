"""Graph-directed IFS for postcritically finite tent maps and slices of the Master Teapot."""

__version__ = "0.1.0"
