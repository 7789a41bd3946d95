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
# pylint:disable=missing-docstring, invalid-name
from fractions import Fraction

from absl.testing import absltest
from absl.testing import parameterized

from surface_sections import fixtures
from surface_sections.python import errors
from surface_sections.python.lattice.ns_lattice import NSClass
from surface_sections.python.toric import toric_oracle
from surface_sections.python.toric.toric_oracle import ToricDivisor

F = Fraction


def T(*coeffs):
  return ToricDivisor(coeffs)


class BuildFanTest(parameterized.TestCase):

  def test_defaults(self):
    fan = toric_oracle.build_fan([(1, 0), (0, 1), (-1, -1)])
    self.assertEqual(fan.names, ('D1', 'D2', 'D3'))
    self.assertEqual(fan.basis, (('D3', 2),))
    self.assertIsNone(fan.ample)

  @parameterized.named_parameters(
      ('too_few_rays', [(1, 0), (0, 1)], errors.NotComplete),
      ('clockwise', [(1, 0), (-1, -1), (0, 1)], errors.NotComplete),
      ('winds_twice', [(1, 0), (-1, 1), (0, -1), (1, 1), (-1, 0), (1, -1)], errors.NotComplete),
      ('not_primitive', [(2, 0), (0, 1), (-1, -1)], errors.NonPrimitiveRay),
      ('zero_ray', [(0, 0), (0, 1), (-1, -1)], errors.NonPrimitiveRay),
      ('singular_cone', [(1, 0), (1, 2), (-1, -1)], errors.NotSmooth),
  )
  def test_rejects(self, rays, error):
    with self.assertRaises(error):
      toric_oracle.build_fan(rays)

  def test_rejects_fractional_input(self):
    with self.assertRaises(errors.InputError):
      toric_oracle.fan_from_dict({'rays': [[1.9, 0], [0, 1], [-1, -1]]})
    with self.assertRaises(errors.InputError):
      toric_oracle.fan_from_dict({
          'rays': [[1, 0], [0, 1], [-1, -1]],
          'basis': [{
              'name': 'L',
              'ray': 0.5
          }],
      })
    fan = toric_oracle.fan_from_dict({'rays': [[1.0, 0], [0, 1], [-1, -1]]})
    self.assertEqual(fan.rays, ((1, 0), (0, 1), (-1, -1)))

  def test_rejects_bad_basis_and_names(self):
    rays = [(1, 0), (0, 1), (-1, 0), (0, -1)]
    with self.assertRaises(errors.InvalidModel):
      toric_oracle.build_fan(rays, names=['a', 'a', 'b', 'c'])
    with self.assertRaises(errors.InvalidModel):
      toric_oracle.build_fan(rays, basis=[('x', 0), ('y', 2)])
    with self.assertRaises(errors.DimensionMismatch):
      toric_oracle.build_fan(rays, ample=[1, 1])

  def test_ray_index(self):
    fan = fixtures.load_fan('f2')
    self.assertEqual(fan.ray_index('s'), 1)
    self.assertEqual(fan.ray_index('3'), 3)
    self.assertEqual(fan.ray_index(0), 0)
    with self.assertRaises(errors.UnknownCurve):
      fan.ray_index('x')
    with self.assertRaises(errors.UnknownCurve):
      fan.ray_index(4)

  def test_fan_json(self):
    fan = fixtures.load_fan('blp2')
    self.assertEqual(toric_oracle.fan_from_dict(fan.to_json()), fan)
    with self.assertRaises(errors.InputError):
      toric_oracle.fan_from_dict({'names': ['a']})


class ToricDivisorTest(absltest.TestCase):

  def test_arithmetic(self):
    self.assertEqual(T(1, 0, 2) + T(0, 1, 1), T(1, 1, 3))
    self.assertEqual(T(1, 0, 2) - T(0, 1, 1), T(1, -1, 1))
    self.assertEqual(3 * T(1, 0, 2), T(3, 0, 6))
    self.assertEqual(T(0, 2, 0).support, (1,))

  def test_reduced(self):
    self.assertTrue(T(1, 0, 1).is_reduced())
    self.assertFalse(T(0, 0, 0).is_reduced())
    self.assertFalse(T(2, 0, 0).is_reduced())
    fan = fixtures.load_fan('blp2')
    self.assertEqual(ToricDivisor.from_rays(fan, ['e', 0]), T(1, 1, 0, 0))
    with self.assertRaises(errors.InputError):
      ToricDivisor.from_rays(fan, ['e', 1])

  def test_rejects_non_integers(self):
    with self.assertRaises(errors.InputError):
      T(1, F(1, 2), 0)
    with self.assertRaises(errors.DimensionMismatch):
      T(1, 0) + T(1, 0, 0)


class SurfaceModelTest(parameterized.TestCase):

  @parameterized.parameters(*fixtures.NAMES)
  def test_exported_model_matches_fixture(self, name):
    model, _ = toric_oracle.fan_to_surface_model(fixtures.load_fan(name))
    self.assertEqual(model, fixtures.load_model(name))

  def test_ray_classes(self):
    classes = toric_oracle.ray_classes(fixtures.load_fan('blp2'))
    self.assertEqual(classes, (NSClass((1, -1)), NSClass((0, 1)), NSClass((1, -1)), NSClass(
        (1, 0))))

  def test_ray_intersection(self):
    fan = fixtures.load_fan('f2')
    self.assertEqual(toric_oracle.ray_intersection(fan, 1, 1), -2)
    self.assertEqual(toric_oracle.ray_intersection(fan, 3, 3), 2)
    self.assertEqual(toric_oracle.ray_intersection(fan, 0, 0), 0)
    self.assertEqual(toric_oracle.ray_intersection(fan, 0, 1), 1)
    self.assertEqual(toric_oracle.ray_intersection(fan, 3, 0), 1)
    self.assertEqual(toric_oracle.ray_intersection(fan, 1, 3), 0)

  def test_principal_divisor_is_trivial(self):
    fan = fixtures.load_fan('f2')
    for u in [(1, 0), (0, 1), (2, -3)]:
      div = toric_oracle.principal_divisor(fan, u)
      self.assertTrue(toric_oracle.divisor_class(fan, div).is_zero())
    self.assertEqual(toric_oracle.principal_divisor(fan, (1, 0)), T(1, 0, -1, 0))

  def test_boundary_curves(self):
    fan = fixtures.load_fan('blp2')
    self.assertEqual(toric_oracle.boundary_curves(fan, T(1, 1, 0, 0)), ('f', 'e'))
    with self.assertRaises(errors.InputError):
      toric_oracle.boundary_curves(fan, T(0, 2, 0, 0))
    with self.assertRaises(errors.DimensionMismatch):
      toric_oracle.divisor_class(fan, T(0, 1, 0))

  def test_declared_ample_must_be_ample(self):
    fan = toric_oracle.build_fan([(1, 0), (1, 1), (0, 1), (-1, -1)], ample=[0, 1, 0, 0])
    with self.assertRaises(errors.InvalidModel):
      toric_oracle.fan_to_surface_model(fan)


class LatticePointTest(parameterized.TestCase):

  def test_projective_plane(self):
    fan = fixtures.load_fan('p2')
    self.assertEqual(toric_oracle.count_h0(fan, T(0, 0, 3)), 10)
    self.assertEqual(toric_oracle.count_h0(fan, T(1, 1, 1)), 10)
    self.assertEqual(toric_oracle.count_h0(fan, T(0, 0, 0)), 1)
    self.assertEqual(toric_oracle.count_h0(fan, T(0, 0, -1)), 0)

  @parameterized.parameters((0, 0), (1, 0), (2, 3), (4, 7))
  def test_blown_up_plane(self, m, k):
    fan = fixtures.load_fan('blp2')
    self.assertEqual(toric_oracle.count_h0(fan, T(0, k, 0, m)), (m + 1) * (m + 2) // 2)

  @parameterized.parameters((0, 0), (1, 2), (3, 5))
  def test_quadric(self, m, k):
    fan = fixtures.load_fan('f0')
    self.assertEqual(toric_oracle.count_h0(fan, T(m + k, m, 0, 0)), (m + 1) * (m + k + 1))

  def test_exceptional_plus_line_class(self):
    fan = fixtures.load_fan('blp2')
    self.assertEqual(toric_oracle.count_h0(fan, T(1, 0, 0, 1)), 5)
    self.assertEqual(toric_oracle.count_h0(fan, T(1, 1, 0, 1)), 6)

  def test_polygon_vertices(self):
    fan = fixtures.load_fan('f2')
    vertices = toric_oracle.polygon_vertices(fan, T(1, 1, 0, 0))
    self.assertCountEqual(vertices, [(F(-1), F(-1, 2)), (F(0), F(0)), (F(-1), F(0))])
    self.assertEqual(toric_oracle.ehrhart_period(fan, T(1, 1, 0, 0)), 2)
    self.assertEqual(toric_oracle.ehrhart_period(fan, T(2, 2, 0, 0)), 1)
    self.assertEqual(toric_oracle.polygon_vertices(fan, T(-1, 0, 0, 0)), ())

  @parameterized.parameters(
      ('p2', (0, 0, 1), 1),
      ('p2', (0, 0, 3), 9),
      ('f2', (1, 1, 0, 0), F(1, 2)),
      ('blp2', (0, 0, 0, 1), 1),
      ('blp2', (1, 1, 0, 1), 4),
      ('f0', (1, 0, 0, 0), 0),
      ('p2', (-1, 0, 0), 0),
  )
  def test_oracle_volume(self, name, coeffs, expected):
    self.assertEqual(toric_oracle.oracle_volume(fixtures.load_fan(name), T(*coeffs)), expected)


class LimitScanTest(absltest.TestCase):

  def test_stabilizes_immediately(self):
    fan = fixtures.load_fan('blp2')
    report = toric_oracle.h0_limit_scan(fan, T(0, 0, 0, 1), T(0, 1, 0, 0), m_max=3)
    self.assertTrue(report.stabilized)
    self.assertFalse(report.unbounded)
    row = report.row(3)
    self.assertEqual((row.k_stable, row.stable_value), (0, 10))
    self.assertEqual(row.k_cap, 16 * 3 + 64)
    self.assertEqual(row.window, 4)
    self.assertFalse(row.certified)

  def test_hirzebruch_negative_section(self):
    fan = fixtures.load_fan('f2')
    report = toric_oracle.h0_limit_scan(fan, T(1, 1, 0, 0), T(0, 1, 0, 0), m_max=2, k_cap=12)
    self.assertEqual(report.row(2).k_stable, 0)
    self.assertEqual(report.row(2).stable_value, 4)

  def test_prediction_certifies(self):
    fan = fixtures.load_fan('blp2')
    divisor, boundary = T(1, 0, 0, 1), T(0, 1, 0, 0)
    predicted = toric_oracle.limit_prediction(fan, divisor, boundary, 1)
    report = toric_oracle.h0_limit_scan(fan,
                                        divisor,
                                        boundary,
                                        m_max=2,
                                        k_cap=12,
                                        predicted=predicted)
    row = report.row(1)
    self.assertEqual(row.values[:3], (5, 6, 6))
    self.assertEqual((row.k_stable, row.stable_value, row.predicted), (1, 6, 6))
    self.assertTrue(row.certified)
    self.assertEqual(row.to_json()['verdict'], 'certified')

  def test_prediction_needs_stable_tail(self):
    fan = fixtures.load_fan('f0')
    divisor, boundary = T(1, 1, 0, 0), T(1, 0, 0, 0)
    predicted = toric_oracle.limit_prediction(fan, divisor, boundary, 0)
    report = toric_oracle.h0_limit_scan(fan,
                                        divisor,
                                        boundary,
                                        m_max=1,
                                        k_cap=12,
                                        predicted=predicted)
    row = report.row(1)
    self.assertEqual(row.predicted, 4)
    self.assertEqual(row.values[:6], (4, 6, 8, 10, 12, 14))
    self.assertIsNone(row.k_stable)
    self.assertTrue(row.unbounded)
    self.assertFalse(report.stabilized)

  def test_wrong_prediction_is_not_certified(self):
    fan = fixtures.load_fan('blp2')
    report = toric_oracle.h0_limit_scan(fan,
                                        T(1, 0, 0, 1),
                                        T(0, 1, 0, 0),
                                        m_max=1,
                                        k_cap=12,
                                        predicted=lambda m: 7)
    row = report.row(1)
    self.assertEqual((row.k_stable, row.stable_value), (1, 6))
    self.assertFalse(row.certified)

  def test_unbounded(self):
    fan = fixtures.load_fan('f0')
    report = toric_oracle.h0_limit_scan(fan, T(1, 1, 0, 0), T(1, 0, 0, 0), m_max=2, k_cap=10)
    self.assertTrue(report.unbounded)
    self.assertFalse(report.stabilized)
    row = report.row(1)
    self.assertEqual(row.values[:4], (4, 6, 8, 10))
    self.assertIsNone(row.k_stable)
    self.assertTrue(row.certified)
    self.assertEqual(report.to_json()['rows'][0]['value'], None)

  def test_cap_exceeded(self):
    fan = fixtures.load_fan('blp2')
    with self.assertRaises(errors.CapExceededInconclusive):
      toric_oracle.h0_limit_scan(fan, T(1, 0, 0, 1), T(0, 1, 0, 0), m_max=1, k_cap=2, window=3)

  def test_rejects(self):
    fan = fixtures.load_fan('blp2')
    with self.assertRaises(errors.InputError):
      toric_oracle.h0_limit_scan(fan, T(0, 0, 0, 1), T(0, 2, 0, 0), m_max=1)
    with self.assertRaises(errors.InputError):
      toric_oracle.h0_limit_scan(fan, T(0, 0, 0, 1), T(0, 1, 0, 0), m_max=1, k_cap=2, window=5)


if __name__ == '__main__':
  absltest.main()
