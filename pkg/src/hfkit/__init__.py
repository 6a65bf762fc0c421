"""Hereditarily finite sets under the Ackermann coding, with weak arithmetic,
higher-order finite models and bounded consistency audits."""

__version__ = "0.1.0"
