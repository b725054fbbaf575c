"""Exact verification kernel for the Kummer-surface Gauss-metric
computation: sigma-series chart, Jacobi-inversion chart and the
double-sphere specialization."""

__version__ = "0.1.0"
