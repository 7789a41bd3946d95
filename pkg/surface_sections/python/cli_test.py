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
import io
import itertools
import json
import sys
from unittest import mock

from absl.testing import absltest
from absl.testing import parameterized

from surface_sections import fixtures
from surface_sections.python import cli
from surface_sections.python import errors
from surface_sections.python.lattice import ns_lattice
from surface_sections.python.lattice.ns_lattice import NSClass
from surface_sections.python.ops import rational_ops
from surface_sections.python.toric import toric_oracle


def _model(name):
  return ['--model', fixtures.model_path(name)]


def _fan(name):
  return ['--fan', fixtures.fan_path(name)]


class CliTestCase(parameterized.TestCase):

  def run_cli(self, *argv):
    args = cli.parse_flags(['surface-sections', *argv])
    with mock.patch.object(sys, 'stdout', new_callable=io.StringIO) as stdout:
      code = cli.main(args)
    text = stdout.getvalue()
    return code, text


class CommandTest(CliTestCase):

  def test_classify(self):
    code, text = self.run_cli('classify', *_model('blp2'), '--divisor', '1,0', '--boundary', 'e')
    self.assertEqual(code, cli.EXIT_OK)
    report = json.loads(text)
    self.assertEqual(report['status'], 'Finite')
    self.assertEqual((report['a_min_bplus'], report['a_min_nsigma']), (0, 1))
    self.assertNotIn('trace', report)

  def test_classify_on_fan(self):
    code, text = self.run_cli('classify', *_fan('blp2'), '--divisor', '0,0,0,1', '--boundary',
                              '1', '--trace')
    self.assertEqual(code, cli.EXIT_OK)
    report = json.loads(text)
    self.assertEqual((report['a_min_bplus'], report['a_min_nsigma']), (0, 1))
    self.assertLen(report['trace'], 3)

  def test_classify_pseff(self):
    code, text = self.run_cli('classify', *_model('blp2'), '--divisor', '0,1', '--boundary', 'e',
                              '--mode', 'pseff')
    self.assertEqual(code, cli.EXIT_OK)
    report = json.loads(text)
    self.assertEqual(report['satisfied_cases'], ['I', 'III'])
    self.assertEqual(report['cases'], {'I': 'holds', 'II': 'fails', 'III': 'holds'})

  def test_classify_inconclusive(self):
    code, text = self.run_cli('classify', *_model('f2'), '--divisor', '1,3', '--boundary', 's',
                              '--a-max', '0')
    self.assertEqual(code, cli.EXIT_UNRESOLVED)
    self.assertEqual(json.loads(text)['status'], 'Inconclusive')

  def test_toric_h0(self):
    self.assertEqual(self.run_cli('toric', 'h0', *_fan('p2'), '--coeffs', '0,0,3'),
                     (cli.EXIT_OK, '{"h0":10}\n'))

  def test_volume(self):
    self.assertEqual(self.run_cli('volume', *_model('f2'), '--divisor', '1,1'),
                     (cli.EXIT_OK, '{"volume":"1/2"}\n'))

  def test_zariski(self):
    code, text = self.run_cli('zariski', *_model('f2'), '--divisor', '1,1')
    self.assertEqual(code, cli.EXIT_OK)
    self.assertEqual(json.loads(text), {'positive': ['1/2', 1], 'negative': {'s': '1/2'}})

  def test_kappa_sigma(self):
    self.assertEqual(self.run_cli('kappa-sigma', *_fan('f0'), '--divisor', '1,0,0,0'),
                     (cli.EXIT_OK, '{"kappa_sigma":1}\n'))

  def test_growth(self):
    code, text = self.run_cli('growth', *_model('blp2'), '--divisor', '1,0', '--boundary', 'e')
    self.assertEqual(code, cli.EXIT_OK)
    self.assertEqual(json.loads(text), {'degree': 2, 'leading': '1/2', 'slope_bound': 0})

  def test_toric_model(self):
    code, text = self.run_cli('toric', 'model', *_fan('blp2'))
    self.assertEqual(code, cli.EXIT_OK)
    report = json.loads(text)
    self.assertEqual(report['gram'], [[1, 0], [0, -1]])
    self.assertEqual(report['ray_classes'], {'f': [1, -1], 'e': [0, 1], 'g': [1, -1], 'l': [1, 0]})


  @parameterized.parameters(*fixtures.NAMES)
  def test_toric_model_reloads(self, name):
    code, text = self.run_cli('toric', 'model', *_fan(name))
    self.assertEqual(code, cli.EXIT_OK)
    report = json.loads(text)
    model = ns_lattice.model_from_dict(report)
    self.assertTrue(ns_lattice.validate_model(model).passed)
    fan = fixtures.load_fan(name)
    classes = {
        ray: NSClass(tuple(rational_ops.parse_rational(x) for x in coords))
        for ray, coords in report['ray_classes'].items()
    }
    for i, j in itertools.product(range(fan.num_rays), repeat=2):
      self.assertEqual(ns_lattice.pair(model, classes[fan.names[i]], classes[fan.names[j]]),
                       toric_oracle.ray_intersection(fan, i, j), f'{name}: D{i}.D{j}')

  @parameterized.parameters(
      ('classify', '--model', 'blp2', '--divisor', '1,0', '--boundary', 'e', '--trace'),
      ('zariski', '--model', 'f2', '--divisor', '1,1'),
      ('toric', 'scan', '--fan', 'f0', '--coeffs', '1,1,0,0', '--boundary', '0', '--m-max', '2',
       '--k-cap', '10'),
  )
  def test_output_is_deterministic(self, *argv):
    argv = list(argv)
    for i, token in enumerate(argv):
      if token == '--model':
        argv[i + 1] = fixtures.model_path(argv[i + 1])
      elif token == '--fan':
        argv[i + 1] = fixtures.fan_path(argv[i + 1])
    first = self.run_cli(*argv)
    second = self.run_cli(*argv)
    self.assertEqual(first, second)
    self.assertNotEmpty(first[1])

  def test_toric_scan(self):
    code, text = self.run_cli('toric', 'scan', *_fan('f2'), '--coeffs', '1,1,0,0', '--boundary',
                              '1', '--m-max', '2', '--k-cap', '12')
    self.assertEqual(code, cli.EXIT_OK)
    rows = json.loads(text)['rows']
    self.assertEqual([(r['m'], r['k_stable'], r['value']) for r in rows], [(1, 0, 2), (2, 0, 4)])

  def test_model_validate(self):
    code, text = self.run_cli('model', 'validate', *_model('blp2'))
    self.assertEqual(code, cli.EXIT_OK)
    self.assertEqual(json.loads(text), {'passed': True, 'signature': [1, 1, 0], 'failures': []})

  def test_model_validate_failure(self):
    with open(fixtures.model_path('p2'), encoding='utf-8') as f:
      data = json.load(f)
    data['ample'] = [-1]
    path = self.create_tempfile(content=json.dumps(data)).full_path
    code, text = self.run_cli('model', 'validate', '--model', path)
    self.assertEqual(code, cli.EXIT_UNRESOLVED)
    self.assertFalse(json.loads(text)['passed'])

  def test_verify(self):
    code, text = self.run_cli('verify', *_fan('p2'), '--suite', 'volume')
    self.assertEqual(code, cli.EXIT_OK)
    self.assertTrue(json.loads(text)['passed'])

  def test_out(self):
    path = self.create_tempdir().create_file('report.json').full_path
    code, text = self.run_cli('volume', *_fan('p2'), '--divisor', '0,0,2', '--out', path)
    self.assertEqual(code, cli.EXIT_OK)
    with open(path, encoding='utf-8') as f:
      self.assertEqual(f.read(), text)
    self.assertEqual(text, '{"volume":4}\n')


class ExitCodeTest(CliTestCase):

  @parameterized.named_parameters(
      ('not_big', ['classify', '--divisor', '0,1', '--boundary', 'e'], cli.EXIT_MATHEMATICAL),
      ('not_pseff', ['classify', '--divisor', '-1,0', '--boundary', 'e', '--mode', 'pseff'],
       cli.EXIT_MATHEMATICAL),
      ('not_finite', ['growth', '--divisor', '1,1', '--boundary', 'f'], cli.EXIT_MATHEMATICAL),
      ('unknown_curve', ['classify', '--divisor', '1,0', '--boundary', 'H'], cli.EXIT_INPUT),
      ('bad_rational', ['volume', '--divisor', '1,x'], cli.EXIT_INPUT),
      ('wrong_rank', ['volume', '--divisor', '1,0,0'], cli.EXIT_INPUT),
      ('missing_boundary', ['classify', '--divisor', '1,0'], cli.EXIT_INPUT),
  )
  def test_blp2_model(self, argv, expected):
    code, text = self.run_cli(argv[0], *_model('blp2'), *argv[1:])
    self.assertEqual(code, expected)
    self.assertEqual(text, '')

  def test_cap_exceeded(self):
    code, _ = self.run_cli('toric', 'scan', *_fan('blp2'), '--coeffs', '1,0,0,1', '--boundary',
                           '1', '--m-max', '1', '--k-cap', '2', '--window', '3')
    self.assertEqual(code, cli.EXIT_UNRESOLVED)

  def test_input_errors(self):
    code, _ = self.run_cli('volume', *_model('p2'), *_fan('p2'), '--divisor', '1')
    self.assertEqual(code, cli.EXIT_INPUT)
    code, _ = self.run_cli('volume', '--model', '/nonexistent/model.json', '--divisor', '1')
    self.assertEqual(code, cli.EXIT_INPUT)
    code, _ = self.run_cli('classify', *_fan('blp2'), '--divisor', '0,0,0,1', '--boundary', 'e')
    self.assertEqual(code, cli.EXIT_INPUT)
    code, _ = self.run_cli('toric', 'h0', *_fan('p2'), '--coeffs', '0,1/2,0')
    self.assertEqual(code, cli.EXIT_INPUT)

  def test_run_config(self):
    with self.assertRaises(errors.InputError):
      cli.RunConfig(command=('toric', 'h0'), model_path='m.json')
    with self.assertRaises(errors.InputError):
      cli.RunConfig(command=('model', 'validate'), fan_path='f.json')
    with self.assertRaises(errors.InputError):
      cli.RunConfig(command=('volume',))
    with self.assertRaises(errors.InputError):
      cli.RunConfig(command=('classify',), model_path='m.json', a_max=-1)
    config = cli.RunConfig(command=('toric', 'h0'), fan_path='f.json', coeffs='1,0,0')
    self.assertEqual(config.get_config()['command'], ['toric', 'h0'])


if __name__ == '__main__':
  absltest.main()
