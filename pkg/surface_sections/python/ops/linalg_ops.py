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
"""Exact linear algebra ops over the rationals.

Elimination is fraction-free (Bareiss): rows are scaled to integers first and every
intermediate entry stays an integer minor of the scaled matrix. Nothing here ever rounds.
"""

import math
from fractions import Fraction


def integer_rows(matrix):
  """Scales each row of a rational matrix to integers.

  Args:
    matrix (list): Rows of `Fraction` (or int) entries.

  Returns:
    tuple: `(rows, scales)` where `rows[i] == [scales[i] * x for x in matrix[i]]` are ints.
  """
  rows, scales = [], []
  for row in matrix:
    row = [Fraction(x) for x in row]
    scale = math.lcm(*[x.denominator for x in row]) if row else 1
    rows.append([int(x * scale) for x in row])
    scales.append(scale)
  return rows, scales


def row_echelon(rows):
  """Fraction-free forward elimination of an integer matrix.

  Args:
    rows (list): Rows of python ints. Not modified.

  Returns:
    tuple: `(echelon, pivots)`, the integer echelon form and its pivot columns.
  """
  a = [list(r) for r in rows]
  num_rows = len(a)
  num_cols = len(a[0]) if num_rows else 0
  pivots = []
  prev = 1
  r = 0
  for c in range(num_cols):
    if r == num_rows:
      break
    p = next((i for i in range(r, num_rows) if a[i][c] != 0), None)
    if p is None:
      continue
    if p != r:
      a[r], a[p] = a[p], a[r]
    for i in range(r + 1, num_rows):
      for j in range(c + 1, num_cols):
        # Sylvester's identity makes this division exact
        a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) // prev
      a[i][c] = 0
    prev = a[r][c]
    pivots.append(c)
    r += 1
  return a, pivots


def rank(matrix):
  """Rank of a rational matrix."""
  if not matrix:
    return 0
  rows, _ = integer_rows(matrix)
  return len(row_echelon(rows)[1])


def determinant(matrix):
  """Exact determinant of a square rational matrix (1 for the empty matrix)."""
  n = len(matrix)
  if n == 0:
    return Fraction(1)
  rows, scales = integer_rows(matrix)
  a = [list(r) for r in rows]
  sign = 1
  prev = 1
  for k in range(n - 1):
    if a[k][k] == 0:
      swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
      if swap is None:
        return Fraction(0)
      a[k], a[swap] = a[swap], a[k]
      sign = -sign
    for i in range(k + 1, n):
      for j in range(k + 1, n):
        a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) // prev
    prev = a[k][k]
  return Fraction(sign * a[n - 1][n - 1], math.prod(scales))


def solve(matrix, rhs):
  """Solves `matrix @ x == rhs` exactly.

  Args:
    matrix (list): m x n rational matrix.
    rhs (list): Length m rational vector.

  Returns:
    list or None: The unique solution as `Fraction`s, or None when the system is
      inconsistent or has more than one solution.
  """
  num_cols = len(matrix[0]) if matrix else 0
  augmented = [list(row) + [b] for row, b in zip(matrix, rhs)]
  rows, _ = integer_rows(augmented)
  echelon, pivots = row_echelon(rows)
  if num_cols in pivots:
    return None
  if len(pivots) != num_cols:
    return None
  solution = [Fraction(0)] * num_cols
  for r in range(len(pivots) - 1, -1, -1):
    c = pivots[r]
    acc = Fraction(echelon[r][num_cols])
    for j in range(c + 1, num_cols):
      acc -= echelon[r][j] * solution[j]
    solution[c] = acc / echelon[r][c]
  return solution


def mat_vec(matrix, vector):
  return [sum((Fraction(a) * b for a, b in zip(row, vector)), Fraction(0)) for row in matrix]


def bilinear(matrix, left, right):
  """Evaluates left^T @ matrix @ right."""
  return sum((Fraction(x) * y for x, y in zip(left, mat_vec(matrix, right))), Fraction(0))


def congruence_signature(matrix):
  """Signature of a symmetric rational matrix by congruence diagonalization.

  Pivots are taken on the diagonal when possible; otherwise an off-diagonal entry is moved
  onto the diagonal by adding row/column j to row/column i. Rows left with no pivot at all
  form the radical.

  Args:
    matrix (list): Symmetric square matrix of rationals.

  Returns:
    tuple: `(positive, negative, zero)` counts.
  """
  n = len(matrix)
  a = [[Fraction(x) for x in row] for row in matrix]
  positive = negative = zero = 0
  active = list(range(n))
  while active:
    k = next((i for i in active if a[i][i] != 0), None)
    if k is None:
      pair = next(((i, j) for i in active for j in active if i < j and a[i][j] != 0), None)
      if pair is None:
        zero += len(active)
        break
      i, j = pair
      for t in range(n):
        a[i][t] += a[j][t]
      for t in range(n):
        a[t][i] += a[t][j]
      k = i
    d = a[k][k]
    if d > 0:
      positive += 1
    else:
      negative += 1
    active.remove(k)
    for i in active:
      f = a[i][k] / d
      if f == 0:
        continue
      for t in range(n):
        a[i][t] -= f * a[k][t]
      for t in range(n):
        a[t][i] -= f * a[t][k]
  return positive, negative, zero


def is_negative_definite(matrix):
  """Leading principal minor test: (-1)^k det(A_k) > 0 for every k. True when empty."""
  n = len(matrix)
  for k in range(1, n + 1):
    minor = determinant([row[:k] for row in matrix[:k]])
    if (-1)**k * minor <= 0:
      return False
  return True


def is_symmetric(matrix):
  n = len(matrix)
  return all(len(row) == n for row in matrix) and all(
      matrix[i][j] == matrix[j][i] for i in range(n) for j in range(i + 1, n))
