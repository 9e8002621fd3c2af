"""Covariance-matrix simulator for dual-rail cluster states in an OPO frequency comb."""

from combwire._core import *  # noqa: F401,F403
