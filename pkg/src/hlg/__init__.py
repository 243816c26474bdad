"""Exact local-to-global number theory: p-adic deciders, diagonal forms,
Selmer's cubic, elliptic L-series and finite-group cohomology."""

__version__ = "0.1.0"
