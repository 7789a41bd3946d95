# SPDX-FileCopyrightText: Copyright (c) 2026 The surface-sections Authors. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Exact cone membership ops."""

import itertools
from fractions import Fraction

from absl import logging

from surface_sections.python.ops import linalg_ops


def nonnegative_combination(generators, target):
  """Writes `target` as a nonnegative combination of `generators`, if possible.

  Feasibility of {lambda >= 0 : G lambda = target} is decided by enumerating basic
  solutions: whenever the system is feasible, some solution is supported on a basis of the
  column space of G, so it suffices to solve one system per basis. Subsets are
  visited in lexicographic order, which makes the returned certificate deterministic.

  Args:
    generators (list): Generator vectors, each a list of rationals of equal length.
    target (list): Vector to decompose.

  Returns:
    list or None: Nonnegative `Fraction` coefficients aligned with `generators`, or None
      when `target` is not in the cone they span.
  """
  dim = len(target)
  coefficients = [Fraction(0)] * len(generators)
  if all(x == 0 for x in target):
    return coefficients
  if not generators:
    return None
  columns = [[Fraction(x) for x in g] for g in generators]
  full = [[columns[j][i] for j in range(len(columns))] for i in range(dim)]
  r = linalg_ops.rank(full)
  visited = 0
  for subset in itertools.combinations(range(len(columns)), r):
    sub = [[columns[j][i] for j in subset] for i in range(dim)]
    if linalg_ops.rank(sub) != r:
      continue
    visited += 1
    solution = linalg_ops.solve(sub, target)
    if solution is None or any(x < 0 for x in solution):
      continue
    for j, x in zip(subset, solution):
      coefficients[j] = x
    logging.vlog(2, 'cone certificate found after %d bases', visited)
    return coefficients
  logging.vlog(2, 'no cone certificate among %d bases', visited)
  return None
