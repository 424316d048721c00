"""Diagnostics for binary words.

Covers Lempel-Ziv complexity (Kaspar-Schuster scan), autocorrelation,
normalized power spectral density, and cumulative symbol balance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSequenceError
from .sequences import BinarySequence
from .series import ObservableSeries

__all__ = [
    "LzcTrace",
    "AcfRecord",
    "SpectrumRecord",
    "lzc",
    "lzc_curve",
    "autocorrelation",
    "psd",
    "ones_fraction_curve",
]


def _as_word(word) -> str:
    """Coerce a BinarySequence, string, or int iterable to a '0'/'1' string."""
    if isinstance(word, BinarySequence):
        return word.word()
    if isinstance(word, str):
        text = word
    else:
        text = "".join(str(int(s)) for s in word)
    if not set(text) <= {"0", "1"}:
        raise ValueError("word must contain only the symbols 0 and 1")
    return text


def _as_values(word) -> np.ndarray:
    if isinstance(word, BinarySequence):
        return word.symbols.astype(float)
    if isinstance(word, str):
        return np.array([int(c) for c in _as_word(word)], dtype=float)
    values = np.asarray(word, dtype=float)
    if values.ndim != 1 or not np.isin(values, (0.0, 1.0)).all():
        raise ValueError("word must be a 1-D sequence over {0, 1}")
    return values


@dataclass(frozen=True)
class LzcTrace:
    """Complexity count plus the component words of the parse.

    The partitions concatenate back to the scanned word and their count
    equals the complexity.
    """

    complexity: int
    partitions: tuple[str, ...]


@dataclass(frozen=True)
class AcfRecord:
    """Autocorrelation values per lag, normalized so lag 0 reads 1.

    Values at positive lags may marginally exceed 1 in magnitude for
    strongly anticorrelated finite words because each lag uses its own
    finite-sample prefactor.
    """

    lags: np.ndarray
    values: np.ndarray


@dataclass(frozen=True)
class SpectrumRecord:
    """Normalized power per integer frequency 1 .. T (T = word length)."""

    frequencies: np.ndarray
    power: np.ndarray


def lzc(word) -> LzcTrace:
    """Lempel-Ziv complexity of a binary word via the Kaspar-Schuster scan.

    The scan keeps a parsed prefix S and a candidate component Q.  While
    Q occurs inside the vocabulary of S + Q with the last character
    dropped, Q keeps extending; otherwise Q closes as a new component
    and the scan restarts after it.  A leftover candidate at the end of
    the word counts as one final component, so a constant word of any
    length parses into exactly two components.

    Args:
        word: Nonempty word over {0, 1}.

    Returns:
        LzcTrace with the component count and the parsed components.

    Raises:
        ValueError: If the word is empty or holds other symbols.
    """
    w = _as_word(word)
    if not w:
        raise ValueError("word must be nonempty")
    n = len(w)
    parts = [w[:1]]
    q_start, q_end = 1, 2  # candidate Q = w[q_start:q_end]
    while q_end <= n:
        if w[q_start:q_end] in w[: q_end - 1]:
            q_end += 1
        else:
            parts.append(w[q_start:q_end])
            q_start, q_end = q_end, q_end + 1
    if q_start < n:
        parts.append(w[q_start:])
    return LzcTrace(complexity=len(parts), partitions=tuple(parts))


def lzc_curve(word, stride: int) -> ObservableSeries:
    """Complexity of each prefix of length stride, 2 * stride, and so on.

    Args:
        word: Nonempty word over {0, 1}.
        stride: Positive prefix-length increment, at most the word length.

    Returns:
        ObservableSeries with times holding the prefix lengths and one
        column ``lzc``; values are nondecreasing in prefix length.
    """
    w = _as_word(word)
    if stride < 1 or stride > len(w):
        raise ValueError("stride must be in 1 .. len(word)")
    lengths = np.arange(stride, len(w) + 1, stride)
    values = np.array([lzc(w[: int(n)]).complexity for n in lengths])
    return ObservableSeries(times=lengths, columns={"lzc": values})


def autocorrelation(word, tau_max: int) -> AcfRecord:
    """Autocorrelation of the mean-centered word, normalized at lag 0.

    With z the centered word indexed 0 .. T, the raw value per lag is
    R(tau) = (1 / (T - tau)) * sum_{t = tau}^{T} z_t z_{t - tau}, and
    the returned values are R(tau) / R(0).

    Args:
        word: Word over {0, 1} of length at least tau_max + 2.
        tau_max: Largest lag, at least 1 and at most len(word) - 2 so
            every finite-sample prefactor stays finite.

    Returns:
        AcfRecord for lags 0 .. tau_max.

    Raises:
        ValueError: On an out-of-range tau_max.
        DegenerateSequenceError: For a constant word, whose centered
            values vanish identically and admit no normalization.
    """
    z = _as_values(word)
    big_t = len(z) - 1
    if not 1 <= tau_max <= big_t - 1:
        raise ValueError("tau_max must be in 1 .. len(word) - 2")
    z = z - z.mean()
    if not z.any():
        raise DegenerateSequenceError(
            "autocorrelation is undefined for a constant word"
        )
    raw = np.empty(tau_max + 1)
    for tau in range(tau_max + 1):
        raw[tau] = z[tau:] @ z[: len(z) - tau] / (big_t - tau)
    return AcfRecord(lags=np.arange(tau_max + 1), values=raw / raw[0])


def psd(word) -> SpectrumRecord:
    """Normalized power spectrum of the mean-centered word.

    Power at integer frequency w in 1 .. T is the squared modulus of
    the discrete Fourier transform of the centered word (the constant
    prefactor of the transform cancels under normalization), and the
    returned powers sum to 1.  Frequency T aliases the zero-frequency
    bin and carries no power after centering.

    Args:
        word: Word over {0, 1} of length T >= 2.

    Returns:
        SpectrumRecord over frequencies 1 .. T.

    Raises:
        ValueError: If the word is shorter than 2 symbols.
        DegenerateSequenceError: For a constant word (zero spectrum).
    """
    z = _as_values(word)
    if len(z) < 2:
        raise ValueError("word must hold at least 2 symbols")
    z = z - z.mean()
    if not z.any():
        raise DegenerateSequenceError("spectrum is undefined for a constant word")
    bins = np.abs(np.fft.fft(z)) ** 2
    power = np.concatenate([bins[1:], bins[:1]])
    power /= power.sum()
    return SpectrumRecord(frequencies=np.arange(1, len(z) + 1), power=power)


def ones_fraction_curve(word) -> ObservableSeries:
    """Cumulative fraction of 1s, f(t) = (ones among b_0 .. b_t) / (t + 1).

    Args:
        word: Nonempty word over {0, 1}.

    Returns:
        ObservableSeries with one column ``f`` indexed by t.
    """
    values = _as_values(word)
    if len(values) == 0:
        raise ValueError("word must be nonempty")
    counts = np.cumsum(values)
    fractions = counts / np.arange(1, len(values) + 1)
    return ObservableSeries(
        times=np.arange(len(values)), columns={"f": fractions}
    )
