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
"""Exact ground truth on smooth complete toric surfaces.

A fan with rays v_1..v_n in counterclockwise order defines a surface whose torus invariant
divisors D_i carry all of its divisor theory. The sections of T = sum d_i D_i are the lattice
points of the polygon {u : <u, v_i> >= -d_i}, so every h^0 here is an exact count.
"""

import dataclasses
import functools
import json
import math
from fractions import Fraction
from typing import Optional, Tuple

import numpy as np
from absl import logging

from surface_sections.python import errors
from surface_sections.python.lattice import finiteness
from surface_sections.python.lattice import ns_lattice
from surface_sections.python.lattice.ns_lattice import CurveGenerator, NSClass, SurfaceModel
from surface_sections.python.ops import rational_ops

DEFAULT_M_MAX = 12
MIN_WINDOW = 4


@dataclasses.dataclass(frozen=True)
class ToricFan:
  """Smooth complete fan in Z^2.

  Args:
    rays (tuple): Primitive integer rays in counterclockwise order.
    names (tuple): Curve name of each ray divisor.
    basis (tuple): `(name, ray index)` pairs; the ray classes forming the lattice basis of the
      exported surface model. The two rays left out form a unimodular pair.
    ample (tuple or None): Ray coefficients of an ample divisor, if declared.
  """
  rays: Tuple[Tuple[int, int], ...]
  names: Tuple[str, ...]
  basis: Tuple[Tuple[str, int], ...]
  ample: Optional[Tuple[int, ...]] = None

  @property
  def num_rays(self):
    return len(self.rays)

  def ray_array(self):
    return np.array(self.rays, dtype=np.int64)

  def ray_index(self, ref):
    """Resolves a ray given by index or by curve name."""
    if isinstance(ref, str) and not ref.lstrip('-').isdigit():
      if ref not in self.names:
        raise errors.UnknownCurve(f'No ray named {ref!r}; known: {", ".join(self.names)}')
      return self.names.index(ref)
    index = rational_ops.parse_integer(ref, 'Ray index')
    if not 0 <= index < self.num_rays:
      raise errors.UnknownCurve(f'Ray index {index} outside [0, {self.num_rays})')
    return index

  def to_json(self):
    return {
        'rays': [list(v) for v in self.rays],
        'names': list(self.names),
        'basis': [{
            'name': name,
            'ray': ray
        } for name, ray in self.basis],
        'ample': list(self.ample) if self.ample is not None else None,
    }


@dataclasses.dataclass(frozen=True)
class ToricDivisor:
  """Torus invariant divisor sum(coeffs[i] * D_i)."""
  coeffs: Tuple[int, ...]

  def __post_init__(self):
    coeffs = [rational_ops.parse_integer(c, 'Toric divisor coefficient') for c in self.coeffs]
    object.__setattr__(self, 'coeffs', tuple(coeffs))

  @classmethod
  def from_rays(cls, fan, rays):
    """Reduced divisor sum(D_i) over distinct rays given by index or name."""
    indices = [fan.ray_index(r) for r in rays]
    if not indices or len(set(indices)) != len(indices):
      raise errors.InputError('A reduced toric divisor needs distinct rays')
    coeffs = [0] * fan.num_rays
    for i in indices:
      coeffs[i] = 1
    return cls(tuple(coeffs))

  @property
  def support(self):
    return tuple(i for i, c in enumerate(self.coeffs) if c != 0)

  def is_reduced(self):
    return any(self.coeffs) and all(c in (0, 1) for c in self.coeffs)

  def __add__(self, other):
    if len(other.coeffs) != len(self.coeffs):
      raise errors.DimensionMismatch('Toric divisors on different fans')
    return ToricDivisor(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

  def __sub__(self, other):
    return self + (-1) * other

  def __mul__(self, scalar):
    return ToricDivisor(tuple(int(scalar) * a for a in self.coeffs))

  __rmul__ = __mul__


def _det(a, b):
  return a[0] * b[1] - a[1] * b[0]


def _default_basis(rays, names):
  n = len(rays)
  for a in range(n):
    for b in range(a + 1, n):
      if abs(_det(rays[a], rays[b])) == 1:
        return tuple((names[i], i) for i in range(n) if i not in (a, b))
  raise errors.NotSmooth('No unimodular pair of rays')


def _check_basis(rays, basis):
  n = len(rays)
  indices = [r for _, r in basis]
  if len(indices) != n - 2 or len(set(indices)) != n - 2 or not all(
      0 <= r < n for r in indices):
    raise errors.InvalidModel(f'Basis must list {n - 2} distinct ray indices, got {indices}')
  a, b = [i for i in range(n) if i not in indices]
  if abs(_det(rays[a], rays[b])) != 1:
    raise errors.InvalidModel(f'Rays {a} and {b} left out of the basis are not unimodular')


def build_fan(rays, names=None, basis=None, ample=None):
  """Validates a fan.

  Args:
    rays (list): Integer pairs in counterclockwise order.
    names (list): Optional curve names, default D1..Dn.
    basis (list): Optional `(name, ray index)` pairs, default every ray except the first
      unimodular pair.
    ample (list): Optional ray coefficients of an ample divisor.

  Returns:
    ToricFan: The validated fan.

  Raises:
    NonPrimitiveRay: If a ray is zero or not primitive.
    NotComplete: If there are fewer than 3 rays or they do not wind once around the origin
      in counterclockwise order.
    NotSmooth: If an adjacent pair has determinant other than 1.
  """
  try:
    rays = tuple((rational_ops.parse_integer(x, 'Ray coordinate'),
                  rational_ops.parse_integer(y, 'Ray coordinate')) for x, y in rays)
  except (TypeError, ValueError) as e:
    raise errors.InputError(f'Rays must be integer pairs: {e}') from e
  n = len(rays)
  if n < 3:
    raise errors.NotComplete(f'A complete fan needs at least 3 rays, got {n}')
  arr = np.array(rays, dtype=np.int64)
  gcds = np.gcd(arr[:, 0], arr[:, 1])
  if np.any(gcds != 1):
    bad = int(np.flatnonzero(gcds != 1)[0])
    raise errors.NonPrimitiveRay(f'Ray {bad} = {rays[bad]} is not primitive')
  following = np.roll(arr, -1, axis=0)
  dets = arr[:, 0] * following[:, 1] - arr[:, 1] * following[:, 0]
  if np.any(dets <= 0):
    bad = int(np.flatnonzero(dets <= 0)[0])
    raise errors.NotComplete(
        f'Rays {bad} and {(bad + 1) % n} do not span a strictly convex counterclockwise cone')
  # 0 for angles in [0, pi), 1 for [pi, 2pi); each wrap past angle 0 is a 1 -> 0 step
  upper = (arr[:, 1] > 0) | ((arr[:, 1] == 0) & (arr[:, 0] > 0))
  half = np.where(upper, 0, 1)
  wraps = int(np.sum((half == 1) & (np.roll(half, -1) == 0)))
  if wraps != 1:
    raise errors.NotComplete(f'Rays wind {wraps} times around the origin')
  if np.any(dets != 1):
    bad = int(np.flatnonzero(dets != 1)[0])
    raise errors.NotSmooth(
        f'Rays {bad} and {(bad + 1) % n} have determinant {int(dets[bad])}, expected 1')
  names = tuple(names) if names is not None else tuple(f'D{i + 1}' for i in range(n))
  if len(names) != n or len(set(names)) != n:
    raise errors.InvalidModel(f'Need {n} distinct ray names, got {list(names)}')
  if basis is None:
    basis = _default_basis(rays, names)
  else:
    basis = tuple(
        (str(name), rational_ops.parse_integer(ray, 'Basis ray')) for name, ray in basis)
    _check_basis(rays, basis)
  if ample is not None:
    ample = ToricDivisor(tuple(ample)).coeffs
    if len(ample) != n:
      raise errors.DimensionMismatch(f'Ample divisor needs {n} coefficients')
  return ToricFan(rays=rays, names=names, basis=basis, ample=ample)


def fan_from_dict(data):
  try:
    basis = data.get('basis')
    if basis is not None:
      basis = [(b['name'], b['ray']) for b in basis]
    return build_fan(data['rays'], names=data.get('names'), basis=basis, ample=data.get('ample'))
  except (KeyError, TypeError, AttributeError) as e:
    raise errors.InputError(f'Malformed fan: {e!r}') from e


def load_fan(path):
  with open(path, encoding='utf-8') as f:
    try:
      data = json.load(f)
    except json.JSONDecodeError as e:
      raise errors.InputError(f'{path} is not valid JSON: {e}') from e
  return fan_from_dict(data)


def _self_intersection(fan, i):
  """D_i^2 = -c_i where v_{i-1} + v_{i+1} = c_i v_i."""
  n = fan.num_rays
  v = fan.rays[i]
  w = tuple(a + b for a, b in zip(fan.rays[i - 1], fan.rays[(i + 1) % n]))
  c = w[0] // v[0] if v[0] != 0 else w[1] // v[1]
  return -c


def ray_intersection(fan, i, j):
  """Intersection number D_i . D_j of two ray divisors."""
  n = fan.num_rays
  if i == j:
    return _self_intersection(fan, i)
  if (j - i) % n in (1, n - 1):
    return 1
  return 0


@functools.lru_cache(maxsize=None)
def ray_classes(fan):
  """Class of every ray divisor in the basis of `fan.basis`.

  The two rays outside the basis are eliminated with the relations
  sum(<u, v_i> D_i) = 0, which read (D_a, D_b) = -A^-1 sum_kept(v_i D_i) for A = [v_a v_b].
  """
  n = fan.num_rays
  kept = [r for _, r in fan.basis]
  a, b = [i for i in range(n) if i not in kept]
  arr = fan.ray_array()
  det = _det(fan.rays[a], fan.rays[b])
  inverse = np.array([[arr[b, 1], -arr[b, 0]], [-arr[a, 1], arr[a, 0]]], dtype=np.int64) * det
  eliminated = -(inverse @ arr[kept].T)
  rank = len(kept)
  classes = [None] * n
  for j, r in enumerate(kept):
    coords = [0] * rank
    coords[j] = 1
    classes[r] = NSClass(tuple(coords))
  classes[a] = NSClass(tuple(int(x) for x in eliminated[0]))
  classes[b] = NSClass(tuple(int(x) for x in eliminated[1]))
  return tuple(classes)


def _is_ample(model, cls):
  return ns_lattice.self_intersection(model, cls) > 0 and all(
      ns_lattice.pair(model, cls, c.cls) > 0 for c in model.curves)


@functools.lru_cache(maxsize=None)
def fan_to_surface_model(fan):
  """Exports the numerical surface model of a fan.

  Returns:
    tuple: `(SurfaceModel, classes)` where `classes[i]` is the class of ray divisor D_i.

  Raises:
    InvalidModel: If the declared ample divisor is not ample.
  """
  classes = ray_classes(fan)
  kept = [r for _, r in fan.basis]
  gram = tuple(tuple(ray_intersection(fan, i, j) for j in kept) for i in kept)
  canonical = NSClass.zero(len(kept))
  for cls in classes:
    canonical = canonical - cls
  curves = tuple(CurveGenerator(name, cls) for name, cls in zip(fan.names, classes))
  model = SurfaceModel(basis=tuple(name for name, _ in fan.basis),
                       gram=gram,
                       canonical=canonical,
                       chi=1,
                       pg=0,
                       curves=curves,
                       kodaira_equals_numerical=True)
  if fan.ample is not None:
    ample = _combine(classes, fan.ample, len(kept))
  elif _is_ample(model, -canonical):
    ample = -canonical
  else:
    ample = None
  model = dataclasses.replace(model, ample=ample)
  report = ns_lattice.validate_model(model)
  if not report.passed:
    raise errors.InvalidModel('Exported toric model is invalid: ' + '; '.join(report.failures))
  logging.vlog(1, 'exported toric model of rank %d from %d rays', model.rank, fan.num_rays)
  return model, classes


def _combine(classes, coeffs, rank):
  result = NSClass.zero(rank)
  for cls, d in zip(classes, coeffs):
    if d:
      result = result + d * cls
  return result


def _check_divisor(fan, divisor):
  if len(divisor.coeffs) != fan.num_rays:
    raise errors.DimensionMismatch(
        f'Divisor has {len(divisor.coeffs)} coefficients, fan has {fan.num_rays} rays')


def divisor_class(fan, divisor):
  """Numerical class of a torus invariant divisor in the exported model's basis."""
  _check_divisor(fan, divisor)
  classes = ray_classes(fan)
  return _combine(classes, divisor.coeffs, len(fan.basis))


def boundary_curves(fan, divisor):
  """Curve names of the components of a reduced toric divisor."""
  _check_divisor(fan, divisor)
  if not divisor.is_reduced():
    raise errors.InputError(f'{divisor.coeffs} is not a reduced divisor')
  return tuple(fan.names[i] for i in divisor.support)


def principal_divisor(fan, u):
  """div(chi^u) = sum(<u, v_i> D_i)."""
  return ToricDivisor(tuple(int(x) for x in fan.ray_array() @ np.array(u, dtype=np.int64)))


def _cross(o, a, b):
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _convex_hull(points):
  """Monotone chain hull, counterclockwise, collinear points dropped."""
  points = sorted(set(points))
  if len(points) <= 2:
    return tuple(points)
  lower = []
  for p in points:
    while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
      lower.pop()
    lower.append(p)
  upper = []
  for p in reversed(points):
    while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
      upper.pop()
    upper.append(p)
  return tuple(lower[:-1] + upper[:-1])


def polygon_vertices(fan, divisor):
  """Exact vertices of {u : <u, v_i> >= -d_i}, counterclockwise; empty when infeasible.

  Vertices are the feasible pairwise intersections of facet lines. A complete fan makes the
  region bounded.
  """
  _check_divisor(fan, divisor)
  facets = [(x, y, -d) for (x, y), d in zip(fan.rays, divisor.coeffs)]
  points = set()
  for i, (xi, yi, bi) in enumerate(facets):
    for xj, yj, bj in facets[i + 1:]:
      det = xi * yj - yi * xj
      if det == 0:
        continue
      u = Fraction(bi * yj - yi * bj, det)
      w = Fraction(xi * bj - bi * xj, det)
      if all(x * u + y * w >= b for x, y, b in facets):
        points.add((u, w))
  return _convex_hull(points)


def count_h0(fan, divisor):
  """h^0 of a torus invariant divisor: lattice points of its polygon.

  Rows y = const are counted at once: each facet with a nonzero x coefficient bounds x from
  one side by an exact floor or ceiling division.
  """
  vertices = polygon_vertices(fan, divisor)
  if not vertices:
    return 0
  ys = np.arange(math.ceil(min(v[1] for v in vertices)),
                 math.floor(max(v[1] for v in vertices)) + 1,
                 dtype=np.int64)
  if ys.size == 0:
    return 0
  lower = np.full(ys.shape, math.ceil(min(v[0] for v in vertices)), dtype=np.int64)
  upper = np.full(ys.shape, math.floor(max(v[0] for v in vertices)), dtype=np.int64)
  feasible = np.ones(ys.shape, dtype=bool)
  for (a, b), d in zip(fan.rays, divisor.coeffs):
    # a x + b y >= -d
    rest = -d - b * ys
    if a > 0:
      lower = np.maximum(lower, -((-rest) // a))
    elif a < 0:
      upper = np.minimum(upper, rest // a)
    else:
      feasible &= b * ys >= -d
  widths = np.where(feasible, np.maximum(upper - lower + 1, 0), 0)
  return int(widths.sum())


def oracle_volume(fan, divisor):
  """2 * area of the divisor polygon, by the shoelace formula on its exact vertices."""
  vertices = polygon_vertices(fan, divisor)
  if len(vertices) < 3:
    return Fraction(0)
  twice_area = sum((_det(p, q) for p, q in zip(vertices, vertices[1:] + vertices[:1])),
                   Fraction(0))
  return abs(twice_area)


def ehrhart_period(fan, divisor):
  """Least p with p * polygon a lattice polygon, the period of its Ehrhart quasi-polynomial."""
  vertices = polygon_vertices(fan, divisor)
  return math.lcm(1, *[c.denominator for v in vertices for c in v])


@dataclasses.dataclass(frozen=True)
class ScanRow:
  """Values h^0(mD + kE) for k = 0..k_cap and their stabilization at one m.

  Args:
    m (int): Multiple of D.
    values (tuple): h^0(mD + kE) for k = 0..len(values) - 1.
    window (int): Number of trailing equal values needed to call the row stable.
    k_stable (int or None): Least k from which the value stays constant, None if unbounded.
    predicted (int or None): Classifier prediction of the limit, if supplied.
    unbounded (bool): Values still strictly increase over the last window.
    certified (bool): Backed by a theorem (matched prediction, or Riemann-Roch growth)
      rather than by the window heuristic alone.
  """
  m: int
  values: Tuple[int, ...]
  window: int
  k_stable: Optional[int]
  predicted: Optional[int]
  unbounded: bool
  certified: bool

  @property
  def k_cap(self):
    return len(self.values) - 1

  @property
  def stable_value(self):
    return self.values[self.k_stable] if self.k_stable is not None else None

  def to_json(self):
    return {
        'm': self.m,
        'k_cap': self.k_cap,
        'window': self.window,
        'values': list(self.values),
        'k_stable': self.k_stable,
        'value': self.stable_value,
        'predicted': self.predicted,
        'unbounded': self.unbounded,
        'verdict': 'certified' if self.certified else 'empirical',
    }


@dataclasses.dataclass(frozen=True)
class ScanReport:
  rows: Tuple[ScanRow, ...]

  @property
  def stabilized(self):
    return all(row.k_stable is not None for row in self.rows)

  @property
  def unbounded(self):
    return any(row.unbounded for row in self.rows)

  def row(self, m):
    return next(r for r in self.rows if r.m == m)

  def to_json(self):
    return {
        'stabilized': self.stabilized,
        'unbounded': self.unbounded,
        'rows': [row.to_json() for row in self.rows],
    }


def limit_prediction(fan, divisor, boundary, a):
  """h^0(X, m(D + aE)), the value sections on X - E stabilize at once k >= m * a."""

  def _predict(m):
    return count_h0(fan, m * (divisor + a * boundary))

  return _predict


def _stable_index(values, window, predicted):
  k = len(values) - 1
  while k > 0 and values[k - 1] == values[-1]:
    k -= 1
  if len(values) - k < window:
    if predicted is not None:
      logging.warning('scan has no stable tail of %d values, ignoring predicted limit %d', window,
                      predicted)
    return None, False
  if predicted is None:
    return k, False
  if values[k] != predicted:
    logging.warning('scan settles at %d, not at the predicted limit %d', values[k], predicted)
    return k, False
  return k, True


def h0_limit_scan(fan, divisor, boundary, m_max=DEFAULT_M_MAX, k_cap=None, window=None,
                  predicted=None):
  """Tabulates h^0(mD + kE) over the pole order k and finds where it stabilizes.

  Args:
    fan (ToricFan): The surface.
    divisor (ToricDivisor): D.
    boundary (ToricDivisor): E, reduced.
    m_max (int): Rows m = 1..m_max are scanned.
    k_cap (int): Largest pole order, default 16 m + 64 per row.
    window (int): Trailing equal values needed for stability, default max(4, m).
    predicted (callable): Optional m -> expected limit; a stable tail equal to it is certified.

  Returns:
    ScanReport: One row per m.

  Raises:
    InputError: If E is not reduced or the window does not fit below the cap.
    CapExceededInconclusive: If a row neither stabilizes nor strictly increases at the cap.
  """
  _check_divisor(fan, divisor)
  _check_divisor(fan, boundary)
  if not boundary.is_reduced():
    raise errors.InputError(f'Boundary {boundary.coeffs} is not a reduced divisor')
  model, _ = fan_to_surface_model(fan)
  d_cls, e_cls = divisor_class(fan, divisor), divisor_class(fan, boundary)
  m0 = None
  if ns_lattice.is_pseudo_effective(model, d_cls) is not None:
    m0 = finiteness.rr_infiniteness_test(model, d_cls, e_cls)
  rows = []
  for m in range(1, m_max + 1):
    cap = k_cap if k_cap is not None else 16 * m + 64
    win = window if window is not None else max(MIN_WINDOW, m)
    if win < 1 or win > cap + 1:
      raise errors.InputError(f'Window {win} does not fit in k = 0..{cap}')
    values = tuple(count_h0(fan, m * divisor + k * boundary) for k in range(cap + 1))
    expected = predicted(m) if predicted is not None else None
    k_stable, certified = _stable_index(values, win, expected)
    unbounded = False
    if k_stable is None:
      tail = values[cap + 1 - win:]
      if not all(x < y for x, y in zip(tail, tail[1:])):
        raise errors.CapExceededInconclusive(
            f'h0(mD + kE) at m={m} neither stabilizes nor grows strictly up to k={cap}')
      unbounded = True
      certified = m0 is not None and m >= m0
    logging.vlog(1, 'scan m=%d: k_stable=%s unbounded=%s', m, k_stable, unbounded)
    rows.append(
        ScanRow(m=m,
                values=values,
                window=win,
                k_stable=k_stable,
                predicted=expected,
                unbounded=unbounded,
                certified=certified))
  return ScanReport(rows=tuple(rows))
