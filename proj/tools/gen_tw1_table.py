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
"""Regenerates data/tw1_table.txt.

F1(s) = det(I - K_s) on L^2(0, inf) with K_s(x, y) = Ai((x + y)/2 + s)/2,
discretized by Gauss-Legendre quadrature on [0, L]. The kernel only decays
once (x + y)/2 + s is large, so L grows like 2|s| on the left. Double
precision keeps about 1e-3 relative accuracy even at s = -10 (F1 ~ 3e-22)
because the smallest eigenvalue of I - K stays far above machine epsilon.

Usage: gen_tw1_table.py > data/tw1_table.txt
"""
import sys

import numpy as np
from scipy.special import airy

S_MIN, S_MAX, STEP = -10.0, 6.0, 0.02
NODES = 256


def f1(s, m=NODES):
    length = 2.0 * (16.0 - min(s, 0.0))
    x, w = np.polynomial.legendre.leggauss(m)
    x = (x + 1.0) * length / 2.0
    w = w * length / 2.0
    arg = (x[:, None] + x[None, :]) / 2.0 + s
    sw = np.sqrt(w)
    kernel = sw[:, None] * (0.5 * airy(arg)[0]) * sw[None, :]
    return float(np.linalg.det(np.eye(m) - kernel))


def main():
    count = int(round((S_MAX - S_MIN) / STEP)) + 1
    out = sys.stdout
    out.write("# Type-1 Tracy-Widom CDF F1(s)\n")
    out.write("# Fredholm determinant det(I - K_s), K_s(x,y) = Ai((x+y)/2 + s)/2\n")
    out.write("# columns: s F1(s)\n")
    for i in range(count):
        s = round(S_MIN + i * STEP, 10)
        out.write(f"{s:.2f} {f1(s):.17g}\n")


if __name__ == "__main__":
    main()
