#!/usr/bin/env python3
"""Convert a public traffic tensor into the CSV layout read by `lrtc`.

The output has one row per location and days*intervals columns in
chronological order (day-major). Zeros in the source mark missing readings
and are written as `nan` unless --keep-zeros is given.

Examples:
    convert_transdim.py Guangzhou-data-set/tensor.mat guangzhou.csv --key tensor
    convert_transdim.py Seattle-data-set/tensor.npz seattle.csv
    convert_transdim.py speed.csv out.csv --dims 28 288

Then:
    LRTC_GUANGZHOU_DATA=guangzhou.csv LRTC_SEATTLE_DATA=seattle.csv \\
        build/tests/lrtc_acceptance --only real-data
"""

import argparse
import sys
from pathlib import Path

import numpy as np


def load_array(path: Path, key: str | None) -> np.ndarray:
    suffix = path.suffix.lower()
    if suffix == ".mat":
        from scipy.io import loadmat

        data = loadmat(path)
        names = [k for k in data if not k.startswith("__")]
        name = key or (names[0] if len(names) == 1 else None)
        if name is None:
            sys.exit(f"{path}: several arrays ({', '.join(names)}); pick one with --key")
        return np.asarray(data[name], dtype=float)
    if suffix == ".npz":
        data = np.load(path)
        return np.asarray(data[key or data.files[0]], dtype=float)
    if suffix == ".npy":
        return np.load(path).astype(float)
    if suffix == ".csv":
        return np.loadtxt(path, delimiter=",", dtype=float)
    sys.exit(f"{path}: unsupported extension {suffix}")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("source", type=Path)
    parser.add_argument("output", type=Path)
    parser.add_argument("--key", help="array name inside a .mat/.npz file")
    parser.add_argument("--dims", nargs=2, type=int, metavar=("DAYS", "INTERVALS"),
                        help="required when the source is already a location x time matrix")
    parser.add_argument("--transpose", action="store_true", help="source matrix is time x location")
    parser.add_argument("--keep-zeros", action="store_true", help="treat zeros as observed values")
    args = parser.parse_args()

    array = load_array(args.source, args.key)
    if array.ndim == 2 and args.transpose:
        array = array.T
    if array.ndim == 3:
        locations, days, intervals = array.shape
        matrix = array.reshape(locations, days * intervals)
    elif array.ndim == 2:
        if not args.dims:
            sys.exit("a 2-D source needs --dims DAYS INTERVALS")
        days, intervals = args.dims
        if array.shape[1] != days * intervals:
            sys.exit(f"source has {array.shape[1]} columns, expected {days * intervals}")
        matrix = array
    else:
        sys.exit(f"expected a 2-D or 3-D array, got shape {array.shape}")

    if not args.keep_zeros:
        matrix = np.where(matrix == 0, np.nan, matrix)
    np.savetxt(args.output, matrix, delimiter=",", fmt="%.17g")
    missing = np.isnan(matrix).mean() * 100
    print(f"wrote {args.output}: {matrix.shape[0]} x {matrix.shape[1]} (days={days}, intervals={intervals}), "
          f"{missing:.2f}% missing")


if __name__ == "__main__":
    main()
