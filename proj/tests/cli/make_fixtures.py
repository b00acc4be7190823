#!/usr/bin/env python3
# Copyright 2026 The finitepop Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Writes the small CSV fixtures used by test_cli.py.

Rows are variables and columns are observations. The three-factor file adds
rank-one signals u_k v_k^T with orthonormal u and v and operator norm
10 sqrt(n) on top of unit Gaussian noise.

Usage: make_fixtures.py OUTDIR
"""
import sys
from pathlib import Path

import numpy as np

P, N = 20, 150


def write(path, x):
    rows = ["v%d" % (j + 1) for j in range(x.shape[1])]
    lines = [",".join(rows)]
    lines += [",".join("%.6f" % v for v in row) for row in x]
    path.write_text("\n".join(lines) + "\n")


def main():
    out = Path(sys.argv[1])
    out.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(20260101)

    write(out / "noise.csv", rng.standard_normal((P, N)))

    noise = rng.standard_normal((P, N))
    u, _ = np.linalg.qr(rng.standard_normal((P, 3)))
    v, _ = np.linalg.qr(rng.standard_normal((N, 3)))
    write(out / "three_factors.csv", noise + 10.0 * np.sqrt(N) * u @ v.T)


if __name__ == "__main__":
    main()
