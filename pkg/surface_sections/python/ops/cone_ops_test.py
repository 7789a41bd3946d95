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
# pylint:disable=missing-docstring
from fractions import Fraction

from absl.testing import absltest

from surface_sections.python.ops import cone_ops


class NonnegativeCombinationTest(absltest.TestCase):

  def test_inside_cone(self):
    # generators of the effective cone of the blow-up of P^2 in the (H, e) basis
    generators = [[1, -1], [0, 1], [1, -1], [1, 0]]
    coefficients = cone_ops.nonnegative_combination(generators, [1, 0])
    self.assertEqual(coefficients, [Fraction(1), Fraction(1), Fraction(0), Fraction(0)])

  def test_outside_cone(self):
    self.assertIsNone(cone_ops.nonnegative_combination([[1, -1], [0, 1]], [0, -1]))
    self.assertIsNone(cone_ops.nonnegative_combination([[1, 0]], [-1, 0]))

  def test_zero_target(self):
    self.assertEqual(cone_ops.nonnegative_combination([[1, 0], [0, 1]], [0, 0]),
                     [Fraction(0), Fraction(0)])

  def test_rational_certificate(self):
    coefficients = cone_ops.nonnegative_combination([[2, 0], [0, 3]], [1, 1])
    self.assertEqual(coefficients, [Fraction(1, 2), Fraction(1, 3)])

  def test_lower_rank_generators(self):
    self.assertEqual(cone_ops.nonnegative_combination([[1, 1], [2, 2]], [3, 3]),
                     [Fraction(3), Fraction(0)])
    self.assertIsNone(cone_ops.nonnegative_combination([[1, 1], [2, 2]], [1, 0]))


if __name__ == '__main__':
  absltest.main()
