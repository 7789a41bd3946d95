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
"""Command line front end.

Every subcommand prints one JSON report on stdout; diagnostics go to the absl log on stderr.
Exit codes: 0 success, 1 mathematical error, 2 input error, 3 failed verification or an
inconclusive answer.
"""

import dataclasses
import json
import sys
from typing import Optional, Tuple

from absl import app
from absl import logging
from absl.flags import argparse_flags

from surface_sections.python import errors
from surface_sections.python.lattice import finiteness
from surface_sections.python.lattice import ns_lattice
from surface_sections.python.lattice import zariski
from surface_sections.python.lattice.ns_lattice import NSClass
from surface_sections.python.ops import rational_ops
from surface_sections.python.toric import toric_oracle
from surface_sections.python.toric import verification
from surface_sections.python.toric.toric_oracle import ToricDivisor

EXIT_OK = 0
EXIT_MATHEMATICAL = 1
EXIT_INPUT = 2
EXIT_UNRESOLVED = 3

DEFAULT_A_MAX = finiteness.DEFAULT_A_MAX
DEFAULT_M_MAX = toric_oracle.DEFAULT_M_MAX

_MODEL_ONLY = {('model', 'validate')}
_FAN_ONLY = {('toric', 'model'), ('toric', 'h0'), ('toric', 'scan'), ('verify',)}


@dataclasses.dataclass(frozen=True)
class RunConfig:
  """Everything one invocation needs.

  Args:
    command (tuple): Subcommand path, e.g. ('toric', 'h0').
    model_path (str): Surface model JSON, exclusive with `fan_path`.
    fan_path (str): Fan JSON, exclusive with `model_path`.
    divisor (str): Rational coordinates (model) or integer ray coefficients (fan).
    boundary (str): Comma separated curve names (model) or ray indices (fan).
    coeffs (str): Integer ray coefficients for toric subcommands.
    mode (str): 'big' or 'pseff' for classify.
    suite (str): Verification suite name.
    a_max (int): Classifier scan cap.
    m_max (int): Largest multiple m in scans.
    k_cap (int): Largest pole order in scans, default per m.
    window (int): Stabilization window in scans, default per m.
    trace (bool): Include per-a diagnostics in classify reports.
    out (str): Also write the report to this path.

  Raises:
    InputError: If the inputs do not fit the command.
  """
  command: Tuple[str, ...]
  model_path: Optional[str] = None
  fan_path: Optional[str] = None
  divisor: Optional[str] = None
  boundary: Optional[str] = None
  coeffs: Optional[str] = None
  mode: str = 'big'
  suite: Optional[str] = None
  a_max: int = DEFAULT_A_MAX
  m_max: int = DEFAULT_M_MAX
  k_cap: Optional[int] = None
  window: Optional[int] = None
  trace: bool = False
  out: Optional[str] = None

  def __post_init__(self):
    if self.model_path is not None and self.fan_path is not None:
      raise errors.InputError('Pass exactly one of --model and --fan')
    if self.model_path is None and self.fan_path is None:
      raise errors.InputError('One of --model and --fan is required')
    if self.command in _MODEL_ONLY and self.model_path is None:
      raise errors.InputError(f'{" ".join(self.command)} needs --model')
    if self.command in _FAN_ONLY and self.fan_path is None:
      raise errors.InputError(f'{" ".join(self.command)} needs --fan')
    if self.mode not in ('big', 'pseff'):
      raise errors.InputError(f'Unknown classify mode {self.mode!r}')
    for name in ('a_max', 'm_max'):
      if getattr(self, name) < 0:
        raise errors.InputError(f'--{name.replace("_", "-")} must be nonnegative')

  @classmethod
  def from_args(cls, args):
    names = [f.name for f in dataclasses.fields(cls)]
    return cls(**{name: getattr(args, name) for name in names if hasattr(args, name)})

  def get_config(self):
    config = dataclasses.asdict(self)
    config['command'] = list(self.command)
    return config


@dataclasses.dataclass(frozen=True)
class _Inputs:
  """Loaded surface, plus the fan when the surface came from one."""
  model: ns_lattice.SurfaceModel
  fan: Optional[toric_oracle.ToricFan] = None


def _load(config):
  if config.fan_path is not None:
    fan = toric_oracle.load_fan(config.fan_path)
    model, _ = toric_oracle.fan_to_surface_model(fan)
    return _Inputs(model=model, fan=fan)
  return _Inputs(model=ns_lattice.load_model(config.model_path))


def _parse_coeffs(text):
  if text is None:
    raise errors.InputError('Missing divisor coefficients')
  values = rational_ops.parse_rational_list(text)
  if any(v.denominator != 1 for v in values):
    raise errors.InputError(f'Ray coefficients must be integers, got {text!r}')
  return ToricDivisor(tuple(int(v) for v in values))


def _divisor(config, inputs):
  if config.divisor is None:
    raise errors.InputError('--divisor is required')
  if inputs.fan is not None:
    return toric_oracle.divisor_class(inputs.fan, _parse_coeffs(config.divisor))
  return inputs.model.make_class(NSClass.parse(config.divisor))


def _boundary_tokens(config):
  if not config.boundary:
    raise errors.InputError('--boundary is required')
  return [token.strip() for token in config.boundary.split(',') if token.strip()]


def _boundary(config, inputs):
  tokens = _boundary_tokens(config)
  if inputs.fan is not None:
    if not all(token.isdigit() for token in tokens):
      raise errors.InputError('With --fan, --boundary takes ray indices')
    names = [inputs.fan.names[inputs.fan.ray_index(token)] for token in tokens]
    return finiteness.BoundaryDivisor.from_curves(inputs.model, names)
  return finiteness.BoundaryDivisor.from_curves(inputs.model, tokens)


def _model_validate(config, inputs):
  del config
  report = ns_lattice.validate_model(inputs.model)
  return (EXIT_OK if report.passed else EXIT_UNRESOLVED), report.to_json()


def _zariski(config, inputs):
  return EXIT_OK, zariski.zariski_decompose(inputs.model, _divisor(config, inputs)).to_json()


def _volume(config, inputs):
  value = zariski.volume(inputs.model, _divisor(config, inputs))
  return EXIT_OK, {'volume': rational_ops.format_rational(value)}


def _kappa_sigma(config, inputs):
  value = zariski.kappa_sigma(inputs.model, _divisor(config, inputs))
  return EXIT_OK, {'kappa_sigma': value.value}


def _classify(config, inputs):
  divisor, boundary = _divisor(config, inputs), _boundary(config, inputs)
  if config.mode == 'big':
    verdict = finiteness.classify_big(inputs.model, divisor, boundary, a_max=config.a_max,
                                      trace=config.trace)
  else:
    verdict = finiteness.classify_pseff(inputs.model, divisor, boundary, a_max=config.a_max,
                                        trace=config.trace)
  code = EXIT_UNRESOLVED if verdict.status is finiteness.Status.INCONCLUSIVE else EXIT_OK
  return code, verdict.to_json(include_trace=config.trace)


def _growth(config, inputs):
  estimate = finiteness.growth_estimate(inputs.model, _divisor(config, inputs),
                                        _boundary(config, inputs), a_max=config.a_max)
  return EXIT_OK, estimate.to_json()


def _toric_model(config, inputs):
  del config
  classes = toric_oracle.ray_classes(inputs.fan)
  report = ns_lattice.model_to_dict(inputs.model)
  report['ray_classes'] = {name: cls.to_json() for name, cls in zip(inputs.fan.names, classes)}
  return EXIT_OK, report


def _toric_h0(config, inputs):
  return EXIT_OK, {'h0': toric_oracle.count_h0(inputs.fan, _parse_coeffs(config.coeffs))}


def _toric_scan(config, inputs):
  fan = inputs.fan
  tokens = _boundary_tokens(config)
  if not all(token.isdigit() for token in tokens):
    raise errors.InputError('With --fan, --boundary takes ray indices')
  report = toric_oracle.h0_limit_scan(fan,
                                      _parse_coeffs(config.coeffs),
                                      ToricDivisor.from_rays(fan, [int(t) for t in tokens]),
                                      m_max=config.m_max,
                                      k_cap=config.k_cap,
                                      window=config.window)
  return EXIT_OK, report.to_json()


def _verify(config, inputs):
  report = verification.verify_suite(inputs.fan, config.suite, m_max=config.m_max,
                                     a_max=config.a_max)
  return (EXIT_OK if report.passed else EXIT_UNRESOLVED), report.to_json()


_HANDLERS = {
    ('model', 'validate'): _model_validate,
    ('zariski',): _zariski,
    ('volume',): _volume,
    ('kappa-sigma',): _kappa_sigma,
    ('classify',): _classify,
    ('growth',): _growth,
    ('toric', 'model'): _toric_model,
    ('toric', 'h0'): _toric_h0,
    ('toric', 'scan'): _toric_scan,
    ('verify',): _verify,
}


def dispatch(config):
  """Runs one command.

  Returns:
    tuple: `(exit code, report)` with the report a JSON-ready dict.

  Raises:
    SurfaceSectionsError: Mapped to an exit code by `main`.
  """
  logging.vlog(1, 'config: %s', config.get_config())
  return _HANDLERS[config.command](config, _load(config))


def dumps(report):
  return json.dumps(report, separators=(',', ':')) + '\n'


def _add_input_flags(parser, model=True, fan=True):
  if model:
    parser.add_argument('--model', dest='model_path', help='Surface model JSON file.')
  if fan:
    parser.add_argument('--fan', dest='fan_path', help='Toric fan JSON file.')
  parser.add_argument('--out', default=None, help='Also write the JSON report to this path.')


def _add_divisor_flags(parser, boundary=False):
  parser.add_argument('--divisor',
                      help='Coordinates "1,-1/2" with --model, ray coefficients with --fan.')
  if boundary:
    parser.add_argument('--boundary',
                        help='Components of E: curve names with --model, ray indices with --fan.')
    parser.add_argument('--a-max', dest='a_max', type=int, default=DEFAULT_A_MAX,
                        help='Largest a scanned by the classifier.')


def parse_flags(argv):
  """Parses the subcommand line, absl flags included."""
  parser = argparse_flags.ArgumentParser(
      prog='surface-sections',
      description='Zariski decompositions, volumes and finiteness of sections on X - E.')
  sub = parser.add_subparsers(dest='subcommand', required=True)

  model = sub.add_parser('model', help='Surface model commands.')
  model_sub = model.add_subparsers(dest='action', required=True)
  validate = model_sub.add_parser('validate', help='Check signature and model invariants.')
  _add_input_flags(validate, fan=False)
  validate.set_defaults(command=('model', 'validate'))

  for name, help_text in (('zariski', 'Zariski decomposition of a class.'),
                          ('volume', 'Volume of a class.'),
                          ('kappa-sigma', 'Numerical dimension of a class.')):
    p = sub.add_parser(name, help=help_text)
    _add_input_flags(p)
    _add_divisor_flags(p)
    p.set_defaults(command=(name,))

  classify = sub.add_parser('classify', help='Finiteness of sections on X - E.')
  _add_input_flags(classify)
  _add_divisor_flags(classify, boundary=True)
  classify.add_argument('--mode', choices=('big', 'pseff'), default='big')
  classify.add_argument('--trace', action='store_true', help='Report per-a diagnostics.')
  classify.set_defaults(command=('classify',))

  growth = sub.add_parser('growth', help='Quadratic growth of sections on X - E.')
  _add_input_flags(growth)
  _add_divisor_flags(growth, boundary=True)
  growth.set_defaults(command=('growth',))

  toric = sub.add_parser('toric', help='Lattice point oracle commands.')
  toric_sub = toric.add_subparsers(dest='action', required=True)
  export = toric_sub.add_parser('model', help='Export the surface model of a fan.')
  _add_input_flags(export, model=False)
  export.set_defaults(command=('toric', 'model'))
  h0 = toric_sub.add_parser('h0', help='Exact h^0 of a torus invariant divisor.')
  _add_input_flags(h0, model=False)
  h0.add_argument('--coeffs', help='Integer ray coefficients, e.g. "0,0,3".')
  h0.set_defaults(command=('toric', 'h0'))
  scan = toric_sub.add_parser('scan', help='Tabulate h^0(mD + kE) over the pole order.')
  _add_input_flags(scan, model=False)
  scan.add_argument('--coeffs', help='Integer ray coefficients of D.')
  scan.add_argument('--boundary', help='Ray indices of the components of E.')
  scan.add_argument('--m-max', dest='m_max', type=int, default=DEFAULT_M_MAX)
  scan.add_argument('--k-cap', dest='k_cap', type=int, default=None)
  scan.add_argument('--window', type=int, default=None)
  scan.set_defaults(command=('toric', 'scan'))

  verify = sub.add_parser('verify', help='Check the engine against the oracle.')
  _add_input_flags(verify, model=False)
  verify.add_argument('--suite', choices=verification.SUITES + ('all',), required=True)
  verify.add_argument('--m-max', dest='m_max', type=int, default=DEFAULT_M_MAX)
  verify.add_argument('--a-max', dest='a_max', type=int, default=DEFAULT_A_MAX)
  verify.set_defaults(command=('verify',))

  return parser.parse_args(argv[1:])


def main(args):
  try:
    config = RunConfig.from_args(args)
    code, report = dispatch(config)
  except errors.CapExceededInconclusive as e:
    logging.error('inconclusive: %s', e)
    return EXIT_UNRESOLVED
  except errors.MathematicalError as e:
    logging.error('%s: %s', type(e).__name__, e)
    return EXIT_MATHEMATICAL
  except (errors.InputError, OSError) as e:
    logging.error('%s: %s', type(e).__name__, e)
    return EXIT_INPUT
  text = dumps(report)
  sys.stdout.write(text)
  if config.out:
    with open(config.out, 'w', encoding='utf-8') as f:
      f.write(text)
  return code


def run():
  app.run(main, flags_parser=parse_flags)


if __name__ == '__main__':
  run()
