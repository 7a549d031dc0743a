"""
Instance serialization.

The binary container is a fixed little-endian header followed by the data::

    magic    8 bytes   b"IFBSINST"
    version  uint32    1
    m        uint64
    n        uint64
    rho      float64
    A        m * n float64, row-major
    b        m float64
"""

# Copyright (C) 2026 ifbs developers

import struct

import numpy as np
import pandas as pd

from .least_squares import L1LSInstance


_MAGIC = b"IFBSINST"
_VERSION = 1
_HEADER = struct.Struct("<8sIQQd")


def write_instance(instance, path):
    """
    Write an l1-LS instance to a binary container.

    Parameters
    ----------
    instance : L1LSInstance
        The instance to be written.

    path : str
        Output file path.
    """
    if not isinstance(instance, L1LSInstance):
        raise TypeError("instance must be an instance of L1LSInstance.")

    m, n = instance.shape

    with open(path, "wb") as f:
        f.write(_HEADER.pack(_MAGIC, _VERSION, m, n, instance.rho))
        f.write(np.ascontiguousarray(instance.A, dtype="<f8").tobytes())
        f.write(np.ascontiguousarray(instance.b, dtype="<f8").tobytes())


def read_instance(path):
    """
    Read an l1-LS instance from a binary container.

    Parameters
    ----------
    path : str
        Input file path.

    Returns
    -------
    instance : L1LSInstance
    """
    with open(path, "rb") as f:
        data = f.read()

    if len(data) < _HEADER.size:
        raise ValueError("{} is too short to be an instance file."
                         .format(path))

    magic, version, m, n, rho = _HEADER.unpack_from(data)

    if magic != _MAGIC:
        raise ValueError("{} is not an instance file; bad magic {!r}."
                         .format(path, magic))

    if version != _VERSION:
        raise ValueError("Unsupported instance file version; got {}."
                         .format(version))

    expected = _HEADER.size + 8 * (m * n + m)
    if len(data) != expected:
        raise ValueError("Instance file size mismatch: expected {} bytes; "
                         "got {}.".format(expected, len(data)))

    values = np.frombuffer(data, dtype="<f8", offset=_HEADER.size)
    A = values[:m * n].reshape(m, n)
    b = values[m * n:]

    return L1LSInstance(A, b, rho)


def read_instance_csv(a_path, b_path, rho=1.0):
    """
    Read an l1-LS instance from headerless CSV files.

    Parameters
    ----------
    a_path : str
        CSV file with the m x n design matrix.

    b_path : str
        CSV file with the m observations, as a single row or column.

    rho : float (default=1.0)
        Weight of the l1 term.

    Returns
    -------
    instance : L1LSInstance
    """
    A = pd.read_csv(a_path, header=None).to_numpy(dtype=float)
    b = pd.read_csv(b_path, header=None).to_numpy(dtype=float).ravel()

    return L1LSInstance(A, b, rho)
