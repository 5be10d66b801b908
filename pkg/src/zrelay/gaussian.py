"""Exact information computations on small jointly Gaussian scalar systems.

This is the independent verification engine for every closed-form rate
expression in the package: a system is declared as independent Gaussian
sources plus linear observables, the joint covariance is assembled from that
structure, and differential entropies / mutual informations come out of
log-determinants of Schur complements.  Nothing here reuses the closed forms
it is meant to check.
"""
from __future__ import annotations

import math
from typing import Mapping, Sequence

import numpy as np

from .core import ChannelParams

_LN2 = math.log(2.0)
#: relative tolerance below which a conditional covariance counts as singular
PSD_RTOL = 1e-12


class SingularSystemError(ValueError):
    """A requested conditional covariance is singular beyond regularization."""


class GaussianSystem:
    """Independent scalar Gaussian sources plus named linear observables.

    Observables may reference sources and previously defined observables;
    they are expanded to source coordinates at insertion time, so the joint
    covariance of any variable set is A diag(var) A^T.
    """

    def __init__(self) -> None:
        self._variances: dict[str, float] = {}
        self._rows: dict[str, dict[str, float]] = {}

    def add_source(self, name: str, variance: float) -> "GaussianSystem":
        if name in self._rows:
            raise ValueError(f"variable {name!r} already defined")
        if not (math.isfinite(variance) and variance >= 0.0):
            raise ValueError(f"source variance must be finite and >= 0, got {variance!r}")
        self._variances[name] = float(variance)
        self._rows[name] = {name: 1.0}
        return self

    def add_observable(self, name: str, terms: Mapping[str, float]) -> "GaussianSystem":
        if name in self._rows:
            raise ValueError(f"variable {name!r} already defined")
        expanded: dict[str, float] = {}
        for ref, coeff in terms.items():
            if ref not in self._rows:
                raise ValueError(f"unknown variable {ref!r} in definition of {name!r}")
            for source, base in self._rows[ref].items():
                expanded[source] = expanded.get(source, 0.0) + float(coeff) * base
        self._rows[name] = expanded
        return self

    def names(self) -> list[str]:
        return list(self._rows)

    def covariance(self, names: Sequence[str]) -> np.ndarray:
        """Joint covariance of the named variables."""
        sources = list(self._variances)
        a = np.zeros((len(names), len(sources)))
        for i, name in enumerate(names):
            if name not in self._rows:
                raise ValueError(f"unknown variable {name!r}")
            for source, coeff in self._rows[name].items():
                a[i, sources.index(source)] = coeff
        d = np.array([self._variances[s] for s in sources])
        cov = (a * d) @ a.T
        return 0.5 * (cov + cov.T)

    def conditional_covariance(
        self, names: Sequence[str], given: Sequence[str] = ()
    ) -> np.ndarray:
        """Schur complement Sigma_AA - Sigma_AC Sigma_CC^-1 Sigma_CA."""
        names = list(names)
        given = list(given)
        if not given:
            return self.covariance(names)
        joint = self.covariance(names + given)
        k = len(names)
        s_aa = joint[:k, :k]
        s_ac = joint[:k, k:]
        s_cc = joint[k:, k:]
        scale = float(np.max(np.abs(np.diag(s_cc)))) or 1.0
        try:
            solved = np.linalg.solve(s_cc, s_ac.T)
        except np.linalg.LinAlgError:
            raise SingularSystemError(
                f"conditioning set {given} has a singular covariance"
            ) from None
        if not np.all(np.isfinite(solved)):
            raise SingularSystemError(f"conditioning set {given} has a singular covariance")
        cond = s_aa - s_ac @ solved
        cond = 0.5 * (cond + cond.T)
        floor = -PSD_RTOL * max(scale, float(np.max(np.abs(np.diag(cond)))), 1.0)
        if np.any(np.diag(cond) < floor):
            raise SingularSystemError(
                f"conditional covariance of {names} given {given} is not PSD"
            )
        return cond

    def conditional_variance(self, target: str, given: Sequence[str] = ()) -> float:
        """Residual variance of one variable given a set of others."""
        value = float(self.conditional_covariance([target], given)[0, 0])
        return max(value, 0.0)

    def mutual_information(
        self,
        a: Sequence[str] | str,
        b: Sequence[str] | str,
        given: Sequence[str] | str = (),
    ) -> float:
        """I(A; B | C) in bits via log-determinants of conditional covariances."""
        a = _as_names(a)
        b = _as_names(b)
        given = _as_names(given)
        overlap = set(a) & set(b)
        if overlap:
            raise ValueError(f"variable sets overlap: {sorted(overlap)}")
        det_a = _logdet(self.conditional_covariance(a, given), a, given)
        det_b = _logdet(self.conditional_covariance(b, given), b, given)
        det_ab = _logdet(self.conditional_covariance(a + b, given), a + b, given)
        value = 0.5 * (det_a + det_b - det_ab) / _LN2
        # clamp the tiny negatives produced by rounding on independent sets
        return 0.0 if -1e-9 < value < 0.0 else value


def _as_names(value: Sequence[str] | str) -> list[str]:
    return [value] if isinstance(value, str) else list(value)


def _logdet(cov: np.ndarray, names: Sequence[str], given: Sequence[str]) -> float:
    sign, value = np.linalg.slogdet(cov)
    if sign <= 0.0 or not math.isfinite(value):
        raise SingularSystemError(
            f"covariance of {list(names)} given {list(given)} is singular"
        )
    return float(value)


# -- standard channel systems --------------------------------------------------
#
# Canonical embedding with unit noise and unit transmit powers: the gain on a
# signal source is the square root of its power ratio, which reproduces every
# SNR/INR product exactly and leaves mutual informations unchanged.


def power_split_system(params: ChannelParams, beta: float) -> GaussianSystem:
    """Both receivers of the Z channel with transmitter 2 split into U2 + W2.

    Variables: sources X1, U2, W2, Z1, Z2 and observables Y1, Y2.
    """
    if not 0.0 <= beta <= 1.0:
        raise ValueError(f"beta must be in [0, 1], got {beta!r}")
    h11 = math.sqrt(params.snr1)
    h21 = math.sqrt(params.inr2)
    h22 = math.sqrt(params.snr2)
    sys = GaussianSystem()
    sys.add_source("X1", 1.0)
    sys.add_source("U2", beta)
    sys.add_source("W2", 1.0 - beta)
    sys.add_source("Z1", 1.0)
    sys.add_source("Z2", 1.0)
    sys.add_observable("Y1", {"X1": h11, "U2": h21, "W2": h21, "Z1": 1.0})
    sys.add_observable("Y2", {"U2": h22, "W2": h22, "Z2": 1.0})
    return sys


def quantize_forward_system(params: ChannelParams, sigma2_over_n: float) -> GaussianSystem:
    """Z channel plus a quantized copy of receiver 2's signal at receiver 1.

    Variables: sources X1, X2, Z1, Z2, e and observables Y1, Y2, Yhat2 = Y2 + e.
    """
    if not sigma2_over_n >= 0.0:
        raise ValueError(f"quantization noise must be >= 0, got {sigma2_over_n!r}")
    sys = GaussianSystem()
    sys.add_source("X1", 1.0)
    sys.add_source("X2", 1.0)
    sys.add_source("Z1", 1.0)
    sys.add_source("Z2", 1.0)
    sys.add_source("e", sigma2_over_n)
    sys.add_observable("Y1", {"X1": math.sqrt(params.snr1), "X2": math.sqrt(params.inr2), "Z1": 1.0})
    sys.add_observable("Y2", {"X2": math.sqrt(params.snr2), "Z2": 1.0})
    sys.add_observable("Yhat2", {"Y2": 1.0, "e": 1.0})
    return sys


def combined_forwarding_system(
    params: ChannelParams, alpha: float, beta: float, sigma2_over_n: float
) -> GaussianSystem:
    """Relay-side recombination for the reverse relay direction.

    After subtracting the decoded signals, the relay observes
    Ybar1 = h21*(U2 + W2) + alpha*h21*W2 + Z1 and describes the quantized
    Yhat1 = Ybar1 + e to the interference-free receiver, whose own signal is
    Y2.  Variables: sources U2, W2, Z1, Z2, e and observables Ybar1, Yhat1, Y2.
    """
    if not 0.0 <= beta <= 1.0:
        raise ValueError(f"beta must be in [0, 1], got {beta!r}")
    if not sigma2_over_n >= 0.0:
        raise ValueError(f"quantization noise must be >= 0, got {sigma2_over_n!r}")
    h21 = math.sqrt(params.inr2)
    h22 = math.sqrt(params.snr2)
    sys = GaussianSystem()
    sys.add_source("U2", beta)
    sys.add_source("W2", 1.0 - beta)
    sys.add_source("Z1", 1.0)
    sys.add_source("Z2", 1.0)
    sys.add_source("e", sigma2_over_n)
    sys.add_observable("Ybar1", {"U2": h21, "W2": (1.0 + alpha) * h21, "Z1": 1.0})
    sys.add_observable("Yhat1", {"Ybar1": 1.0, "e": 1.0})
    sys.add_observable("Y2", {"U2": h22, "W2": h22, "Z2": 1.0})
    return sys
