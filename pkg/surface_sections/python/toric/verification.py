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
"""Cross-checks of the surface engine against the toric lattice-point oracle.

Each suite walks a deterministic set of torus invariant divisors on one fan, compares what
the engine asserts with exact counts, and records the witnessing divisor of every failure.
"""

import dataclasses
import itertools
from fractions import Fraction
from typing import Tuple

from absl import logging

from surface_sections.python import errors
from surface_sections.python.lattice import finiteness
from surface_sections.python.lattice import ns_lattice
from surface_sections.python.lattice import zariski
from surface_sections.python.lattice.zariski import KappaSigma
from surface_sections.python.ops import linalg_ops
from surface_sections.python.ops import rational_ops
from surface_sections.python.toric import toric_oracle
from surface_sections.python.toric.toric_oracle import ToricDivisor

SUITES = ('zariski', 'volume', 'kappa', 'fkl', 'okounkov', 'growth', 'rr', 'scan', 'trichotomy')

MAX_REPORTED_FAILURES = 20
GROWTH_M_MAX = 20
RR_GRID = 10
FKL_R_MAX = 10
DERIVATIVE_STEP = Fraction(1, 10**6)
DERIVATIVE_POINTS = tuple(Fraction(j, 8) for j in range(-8, 13))
INTEGRAL_ENDS = (Fraction(1, 2), Fraction(1), Fraction(2))
RELATION_SHIFTS = ((1, 0), (0, 1), (1, 1), (-1, 2))


@dataclasses.dataclass(frozen=True)
class CheckResult:
  """Outcome of one property over its samples.

  Args:
    name (str): Property checked, "<suite>.<property>".
    checked (int): Number of instances evaluated.
    failures (tuple): Descriptions of failing instances, truncated.
    num_failures (int): Total number of failing instances.
    details (tuple): Extra `(key, value)` pairs, e.g. a fitted constant.
  """
  name: str
  checked: int
  failures: Tuple[str, ...]
  num_failures: int
  details: Tuple[Tuple[str, object], ...] = ()

  @property
  def passed(self):
    return self.num_failures == 0

  def to_json(self):
    result = {
        'name': self.name,
        'passed': self.passed,
        'checked': self.checked,
        'failures': list(self.failures),
    }
    for key, value in self.details:
      result[key] = rational_ops.format_rational(value) if isinstance(value, Fraction) else value
    return result


@dataclasses.dataclass(frozen=True)
class VerificationReport:
  suite: str
  checks: Tuple[CheckResult, ...]

  @property
  def passed(self):
    return all(c.passed for c in self.checks)

  def check(self, name):
    return next(c for c in self.checks if c.name == name)

  def to_json(self):
    return {
        'suite': self.suite,
        'passed': self.passed,
        'checks': [c.to_json() for c in self.checks],
    }


class _Check:
  """Accumulates instances of one property."""

  def __init__(self, name):
    self.name = name
    self.checked = 0
    self.failures = []
    self.details = {}

  def expect(self, ok, witness):
    self.checked += 1
    if not ok:
      self.failures.append(witness)

  def result(self):
    return CheckResult(name=self.name,
                       checked=self.checked,
                       failures=tuple(self.failures[:MAX_REPORTED_FAILURES]),
                       num_failures=len(self.failures),
                       details=tuple(self.details.items()))


@dataclasses.dataclass(frozen=True)
class _Context:
  fan: toric_oracle.ToricFan
  model: ns_lattice.SurfaceModel
  m_max: int
  a_max: int

  def cls(self, divisor):
    return toric_oracle.divisor_class(self.fan, divisor)

  def ray(self, i):
    coeffs = [0] * self.fan.num_rays
    coeffs[i] = 1
    return ToricDivisor(tuple(coeffs))

  def curve(self, i):
    return self.model.curves[i]

  def h0(self, divisor):
    return toric_oracle.count_h0(self.fan, divisor)


def sample_divisors(fan, low=0, high=2):
  """Every nonzero coefficient vector with entries in [low, high], in lexicographic order."""
  for coeffs in itertools.product(range(low, high + 1), repeat=fan.num_rays):
    if any(coeffs):
      yield ToricDivisor(coeffs)


def _big_samples(ctx, high=1):
  return [t for t in sample_divisors(ctx.fan, 0, high) if zariski.is_big(ctx.model, ctx.cls(t))]


def _zariski_checks(ctx):
  names = ('reconstruction', 'positive_nef', 'orthogonality', 'negative_definite',
           'idempotence', 'scaling', 'maximality')
  checks = {n: _Check(f'zariski.{n}') for n in names}
  nef_classes = sorted(
      {ctx.cls(t) for t in sample_divisors(ctx.fan, 0, 1)
       if ns_lattice.is_nef(ctx.model, ctx.cls(t))[0]},
      key=lambda c: c.coords)
  for t in sample_divisors(ctx.fan):
    d = ctx.cls(t)
    witness = f'T={list(t.coeffs)}'
    decomposition = zariski.zariski_decompose(ctx.model, d)
    positive = decomposition.positive
    checks['reconstruction'].expect(positive + decomposition.negative_class() == d, witness)
    checks['positive_nef'].expect(ns_lattice.is_nef(ctx.model, positive)[0], witness)
    checks['orthogonality'].expect(
        all(ns_lattice.pair(ctx.model, positive, c.cls) == 0 for c in decomposition.support),
        witness)
    gram = [[ns_lattice.pair(ctx.model, a.cls, b.cls)
             for b in decomposition.support]
            for a in decomposition.support]
    checks['negative_definite'].expect(linalg_ops.is_negative_definite(gram), witness)
    again = zariski.zariski_decompose(ctx.model, positive)
    checks['idempotence'].expect(again.positive == positive and not again.negative, witness)
    scaled = zariski.zariski_decompose(ctx.model, 3 * d)
    checks['scaling'].expect(
        scaled.positive == 3 * positive and
        scaled.negative == tuple((c, 3 * a) for c, a in decomposition.negative), witness)
    for nef in nef_classes:
      if ns_lattice.is_pseudo_effective(ctx.model, d - nef) is None:
        continue
      checks['maximality'].expect(
          ns_lattice.is_pseudo_effective(ctx.model, positive - nef) is not None,
          f'{witness}, nef class {nef}')
  return [c.result() for c in checks.values()]


def _volume_checks(ctx):
  equality = _Check('volume.engine_equals_oracle')
  for t in sample_divisors(ctx.fan, -1, 2):
    engine = zariski.volume(ctx.model, ctx.cls(t))
    oracle = toric_oracle.oracle_volume(ctx.fan, t)
    equality.expect(engine == oracle, f'T={list(t.coeffs)}: engine {engine}, oracle {oracle}')
  invariance = _Check('volume.relation_invariance')
  monotone = _Check('volume.monotonicity')
  for t in sample_divisors(ctx.fan, 0, 1):
    base = ctx.h0(t)
    for u in RELATION_SHIFTS:
      shifted = t + toric_oracle.principal_divisor(ctx.fan, u)
      invariance.expect(ctx.h0(shifted) == base, f'T={list(t.coeffs)}, u={u}')
    for i in range(ctx.fan.num_rays):
      monotone.expect(ctx.h0(t + ctx.ray(i)) >= base, f'T={list(t.coeffs)}, E=D{i}')
  return [equality.result(), invariance.result(), monotone.result()]


def _ehrhart_degree(ctx, t):
  p = toric_oracle.ehrhart_period(ctx.fan, t)
  g = [ctx.h0(j * p * t) for j in range(1, 5)]
  if g[3] - 3 * g[2] + 3 * g[1] - g[0] != 0:
    return None
  if g[2] - 2 * g[1] + g[0] != 0:
    return 2
  if g[1] != g[0]:
    return 1
  return 0


def _ample_divisor(ctx):
  if ctx.fan.ample is not None:
    return ToricDivisor(ctx.fan.ample)
  return ToricDivisor((1,) * ctx.fan.num_rays)


def _kappa_checks(ctx):
  growth = _Check('kappa.growth_class')
  bounded = _Check('kappa.zero_is_bounded')
  ample = _ample_divisor(ctx)
  for t in sample_divisors(ctx.fan, 0, 1):
    kappa = zariski.kappa_sigma(ctx.model, ctx.cls(t))
    degree = _ehrhart_degree(ctx, t)
    growth.expect(degree == kappa.value,
                  f'T={list(t.coeffs)}: kappa_sigma {kappa.value}, growth degree {degree}')
    if kappa is KappaSigma.ZERO:
      low, high = ctx.m_max, 2 * ctx.m_max
      bounded.expect(
          ctx.h0(low * t + ample) == ctx.h0(high * t + ample),
          f'T={list(t.coeffs)}: h0(mT + A) still grows between m={low} and m={high}')
  return [growth.result(), bounded.result()]


def _fkl_checks(ctx):
  nsigma = _Check('fkl.nsigma')
  nsigma_converse = _Check('fkl.nsigma_converse')
  bplus = _Check('fkl.bplus')
  bplus_converse = _Check('fkl.bplus_converse')
  for t in sample_divisors(ctx.fan, 0, 1):
    d = ctx.cls(t)
    decomposition = zariski.zariski_decompose(ctx.model, d)
    big = zariski.is_big(ctx.model, d)
    for i in range(ctx.fan.num_rays):
      e = ctx.ray(i)
      witness = f'T={list(t.coeffs)}, E=D{i}'
      if decomposition.coefficient(ctx.curve(i)) >= 1:
        nsigma.expect(
            all(ctx.h0(m * t - m * e) == ctx.h0(m * t) for m in range(1, ctx.m_max + 1)),
            witness)
      elif big:
        nsigma_converse.expect(
            toric_oracle.oracle_volume(ctx.fan, t - e) < toric_oracle.oracle_volume(ctx.fan, t),
            witness)
      if not big:
        continue
      if zariski.augmented_contains_curve(ctx.model, d, ctx.curve(i)):
        bplus.expect(
            all(ctx.h0(m * t + r * e) == ctx.h0(m * t)
                for m in range(1, FKL_R_MAX + 1)
                for r in range(1, FKL_R_MAX + 1)), witness)
      else:
        bplus_converse.expect(
            toric_oracle.oracle_volume(ctx.fan, t + e) > toric_oracle.oracle_volume(ctx.fan, t),
            witness)
  return [nsigma.result(), nsigma_converse.result(), bplus.result(), bplus_converse.result()]


def _one_sided_derivative(model, d, e, t, step):
  """Exact derivative of a quadratic from three points on one side of t."""
  values = [zariski.volume(model, d + (t + j * step) * e) for j in range(3)]
  return (-3 * values[0] + 4 * values[1] - values[2]) / (2 * step)


def _okounkov_checks(ctx):
  integral = _Check('okounkov.integral_identity')
  derivative = _Check('okounkov.one_sided_derivatives')
  restricted = _Check('okounkov.difference_quotient_restricted_volume')
  model = ctx.model
  for t in _big_samples(ctx):
    d = ctx.cls(t)
    for i in range(ctx.fan.num_rays):
      e = ctx.curve(i).cls
      witness = f'T={list(t.coeffs)}, E=D{i}'
      for a in INTEGRAL_ENDS:
        lhs = zariski.volume_increment_integral(model, d, e, a)
        rhs = zariski.volume(model, d + a * e) - zariski.volume(model, d)
        integral.expect(lhs == rhs, f'{witness}, a={a}')
      for s in DERIVATIVE_POINTS:
        if not zariski.is_big(model, d + (s - 2 * DERIVATIVE_STEP) * e):
          continue
        expected = zariski.volume_derivative(model, d, e, s)
        right = _one_sided_derivative(model, d, e, s, DERIVATIVE_STEP)
        left = _one_sided_derivative(model, d, e, s, -DERIVATIVE_STEP)
        derivative.expect(right == expected and left == expected,
                          f'{witness}, t={s}: left {left}, right {right}, 2P.E {expected}')
        point = d + s * e
        if zariski.augmented_contains_curve(model, point, ctx.curve(i)):
          restricted.expect(right == 0, f'{witness}, t={s}: right {right}')
        else:
          value = zariski.restricted_volume(model, point, ctx.curve(i))
          restricted.expect(right == 2 * value, f'{witness}, t={s}: right {right}, vol {value}')
  return [integral.result(), derivative.result(), restricted.result()]


def _quadratic_residual_check(check, values, leading, period, witness):
  """Residual h(m) - leading m^2 must have vanishing stride-p second differences."""
  residual = {m: h - leading * m * m for m, h in values.items()}
  ms = sorted(residual)
  ok = all(residual[m + 2 * period] - 2 * residual[m + period] + residual[m] == 0
           for m in ms
           if m + 2 * period in residual)
  check.expect(ok, witness)
  return max((abs(r) / m for m, r in residual.items()), default=Fraction(0))


def _growth_checks(ctx):
  ehrhart = _Check('growth.ehrhart_consistency')
  leading = _Check('growth.leading_coefficient')
  bound = _Check('growth.linear_residual')
  worst = Fraction(0)
  for t in _big_samples(ctx):
    half_volume = toric_oracle.oracle_volume(ctx.fan, t) / 2
    period = toric_oracle.ehrhart_period(ctx.fan, t)
    top = max(GROWTH_M_MAX, 1 + 2 * period)
    values = {m: ctx.h0(m * t) for m in range(1, top + 1)}
    _quadratic_residual_check(ehrhart, values, half_volume, period, f'T={list(t.coeffs)}')
    d = ctx.cls(t)
    for i in range(ctx.fan.num_rays):
      verdict = finiteness.classify_big(ctx.model, d, [ctx.curve(i)], a_max=ctx.a_max)
      if not verdict.is_finite:
        continue
      witness = f'T={list(t.coeffs)}, E=D{i}'
      estimate = finiteness.growth_estimate(ctx.model, d, [ctx.curve(i)], a_max=ctx.a_max)
      shifted = t + estimate.slope_bound * ctx.ray(i)
      leading.expect(estimate.leading == toric_oracle.oracle_volume(ctx.fan, shifted) / 2,
                     f'{witness}: leading {estimate.leading}')
      period = toric_oracle.ehrhart_period(ctx.fan, shifted)
      top = max(GROWTH_M_MAX, 1 + 2 * period)
      values = {m: ctx.h0(m * shifted) for m in range(1, top + 1)}
      worst = max(worst, _quadratic_residual_check(bound, values, estimate.leading, period,
                                                   witness))
  bound.details['fitted_constant'] = worst
  return [ehrhart.result(), leading.result(), bound.result()]


def _rr_checks(ctx):
  check = _Check('rr.lower_bound')
  for t in sample_divisors(ctx.fan, 0, 1):
    d = ctx.cls(t)
    for i in range(ctx.fan.num_rays):
      e = ctx.ray(i)
      for m in range(RR_GRID + 1):
        for k in range(RR_GRID + 1):
          bound = finiteness.rr_lower_bound(ctx.model, d, ctx.curve(i).cls, m, k)
          exact = ctx.h0(m * t + k * e)
          check.expect(bound <= exact,
                       f'T={list(t.coeffs)}, E=D{i}, m={m}, k={k}: bound {bound} > {exact}')
  return [check.result()]


def _scan(ctx, t, e, m_max):
  try:
    return toric_oracle.h0_limit_scan(ctx.fan, t, e, m_max=m_max)
  except errors.CapExceededInconclusive as err:
    logging.warning('scan inconclusive for T=%s, E=%s: %s', t.coeffs, e.coeffs, err)
    return None


def _distinct_pairs(ctx, samples):
  """(T, i) pairs with distinct (class of T, i), so translates are scanned once."""
  seen = set()
  for t in samples:
    key = ctx.cls(t)
    for i in range(ctx.fan.num_rays):
      if (key, i) not in seen:
        seen.add((key, i))
        yield t, i


def _scan_checks(ctx):
  agreement = _Check('scan.verdict_agreement')
  slope = _Check('scan.pole_slope_bound')
  limit = _Check('scan.limit_value')
  bridge = _Check('scan.bridge_inequality')
  monotone = _Check('scan.bplus_monotonicity')
  for t, i in _distinct_pairs(ctx, _big_samples(ctx)):
    d = ctx.cls(t)
    e = ctx.ray(i)
    boundary = [ctx.curve(i)]
    witness = f'T={list(t.coeffs)}, E=D{i}'
    verdict = finiteness.classify_big(ctx.model, d, boundary, a_max=ctx.a_max)
    report = _scan(ctx, t, e, ctx.m_max)
    if report is None:
      agreement.expect(False, f'{witness}: scan inconclusive')
      continue
    if verdict.is_finite:
      agreement.expect(report.stabilized, f'{witness}: Finite but scan does not stabilize')
      a = verdict.a_min_bplus
      predict = toric_oracle.limit_prediction(ctx.fan, t, e, a)
      for row in report.rows:
        slope.expect(row.k_stable is not None and row.k_stable <= row.m * a,
                     f'{witness}, m={row.m}: k(m)={row.k_stable} > {row.m * a}')
        limit.expect(row.stable_value == predict(row.m), f'{witness}, m={row.m}')
      if verdict.a_min_nsigma is not None:
        bridge.expect(verdict.a_min_nsigma <= a + 1, witness)
      for extra in range(1, 4):
        monotone.expect(
            finiteness.minimal_a_bplus(ctx.model, d + (a + extra) * ctx.curve(i).cls, boundary,
                                       a_max=0) == 0, f'{witness}, a={a + extra}')
    else:
      agreement.expect(verdict.status is finiteness.Status.INFINITE and report.unbounded,
                       f'{witness}: {verdict.status.value} but scan unbounded={report.unbounded}')
  return [agreement.result(), slope.result(), limit.result(), bridge.result(), monotone.result()]


def _trichotomy_checks(ctx):
  agreement = _Check('trichotomy.verdict_agreement')
  scan_m_max = min(ctx.m_max, 3)
  samples = [
      t for t in sample_divisors(ctx.fan, 0, 2) if not zariski.is_big(ctx.model, ctx.cls(t))
  ]
  for t, i in _distinct_pairs(ctx, samples):
    witness = f'T={list(t.coeffs)}, E=D{i}'
    verdict = finiteness.classify_pseff(ctx.model, ctx.cls(t), [ctx.curve(i)], a_max=ctx.a_max)
    report = _scan(ctx, t, ctx.ray(i), scan_m_max)
    if report is None or verdict.status is finiteness.Status.INCONCLUSIVE:
      agreement.expect(False, f'{witness}: inconclusive')
    elif verdict.is_finite:
      agreement.expect(report.stabilized, f'{witness}: Finite but scan does not stabilize')
    else:
      agreement.expect(report.unbounded, f'{witness}: Infinite but scan stabilizes')
  return [agreement.result()]


_SUITE_CHECKS = {
    'zariski': _zariski_checks,
    'volume': _volume_checks,
    'kappa': _kappa_checks,
    'fkl': _fkl_checks,
    'okounkov': _okounkov_checks,
    'growth': _growth_checks,
    'rr': _rr_checks,
    'scan': _scan_checks,
    'trichotomy': _trichotomy_checks,
}


def verify_suite(fan, suite, m_max=toric_oracle.DEFAULT_M_MAX, a_max=finiteness.DEFAULT_A_MAX):
  """Runs one verification suite, or every suite for `suite='all'`.

  Args:
    fan (ToricFan): Fan whose exported model is checked.
    suite (str): One of `SUITES` or 'all'.
    m_max (int): Largest multiple used by oracle scans and FKL checks.
    a_max (int): Scan cap handed to the classifier.

  Returns:
    VerificationReport: One `CheckResult` per property.

  Raises:
    InputError: If `suite` is unknown.
  """
  if suite != 'all' and suite not in _SUITE_CHECKS:
    raise errors.InputError(f'Unknown suite {suite!r}; choose from {", ".join(SUITES)} or all')
  model, _ = toric_oracle.fan_to_surface_model(fan)
  ctx = _Context(fan=fan, model=model, m_max=m_max, a_max=a_max)
  names = SUITES if suite == 'all' else (suite,)
  checks = []
  for name in names:
    logging.info('running verification suite %s', name)
    checks.extend(_SUITE_CHECKS[name](ctx))
  report = VerificationReport(suite=suite, checks=tuple(checks))
  for check in report.checks:
    if not check.passed:
      logging.warning('%s failed on %d of %d instances', check.name, check.num_failures,
                      check.checked)
  return report
