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
from surface_sections.python.toric import verification
from surface_sections.python.toric.verification import CheckResult, VerificationReport


class SampleDivisorsTest(absltest.TestCase):

  def test_counts(self):
    fan = fixtures.load_fan('p2')
    samples = list(verification.sample_divisors(fan))
    self.assertLen(samples, 26)
    self.assertEqual(samples[0].coeffs, (0, 0, 1))
    self.assertLen(list(verification.sample_divisors(fan, -1, 1)), 26)


class ReportTest(absltest.TestCase):

  def test_json(self):
    ok = CheckResult(name='volume.monotonicity', checked=3, failures=(), num_failures=0)
    bad = CheckResult(name='growth.linear_residual',
                      checked=2,
                      failures=('T=[1, 0, 0]',),
                      num_failures=1,
                      details=(('fitted_constant', Fraction(3, 2)),))
    report = VerificationReport(suite='all', checks=(ok, bad))
    self.assertFalse(report.passed)
    self.assertIs(report.check('volume.monotonicity'), ok)
    self.assertEqual(
        report.to_json()['checks'][1], {
            'name': 'growth.linear_residual',
            'passed': False,
            'checked': 2,
            'failures': ['T=[1, 0, 0]'],
            'fitted_constant': '3/2'
        })


class VerifySuiteTest(parameterized.TestCase):

  @parameterized.parameters(*fixtures.NAMES)
  def test_all_suites_pass(self, name):
    report = verification.verify_suite(fixtures.load_fan(name), 'all', m_max=3, a_max=8)
    failed = [c.to_json() for c in report.checks if not c.passed]
    self.assertEqual(failed, [])
    self.assertEqual({c.name.split('.')[0] for c in report.checks}, set(verification.SUITES))
    self.assertTrue(all(c.checked > 0 for c in report.checks if c.name.startswith('zariski')))

  def test_single_suite(self):
    report = verification.verify_suite(fixtures.load_fan('f2'), 'volume')
    self.assertEqual(report.suite, 'volume')
    self.assertEqual([c.name for c in report.checks], [
        'volume.engine_equals_oracle', 'volume.relation_invariance', 'volume.monotonicity'
    ])
    self.assertTrue(report.passed)
    self.assertEqual(report.check('volume.engine_equals_oracle').checked, 4**4 - 1)

  def test_restricted_volume_matches_difference_quotient(self):
    report = verification.verify_suite(fixtures.load_fan('f2'), 'okounkov', m_max=3)
    self.assertEqual([c.name for c in report.checks], [
        'okounkov.integral_identity', 'okounkov.one_sided_derivatives',
        'okounkov.difference_quotient_restricted_volume'
    ])
    check = report.check('okounkov.difference_quotient_restricted_volume')
    self.assertTrue(check.passed, check.to_json())
    self.assertGreater(check.checked, 0)

  def test_fitted_constant_reported(self):
    report = verification.verify_suite(fixtures.load_fan('blp2'), 'growth', m_max=3)
    self.assertIn('fitted_constant', report.check('growth.linear_residual').to_json())

  def test_unknown_suite(self):
    with self.assertRaises(errors.InputError):
      verification.verify_suite(fixtures.load_fan('p2'), 'hodge')


if __name__ == '__main__':
  absltest.main()
