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
"""Exact rational parsing and serialization ops."""

import re
from fractions import Fraction

from surface_sections.python.errors import InputError, InvalidRational

_RATIONAL_RE = re.compile(r'^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$')


def parse_rational(value):
  """Parses one exact rational.

  Args:
    value (int, str or Fraction): An integer, a `Fraction` or a string "p/q" / "n".

  Returns:
    Fraction: The value in reduced form.

  Raises:
    InvalidRational: If `value` is a float, a bool, malformed or has a zero denominator.
  """
  if isinstance(value, bool):
    raise InvalidRational(f'Booleans are not rationals: {value!r}')
  if isinstance(value, Fraction):
    return value
  if isinstance(value, int):
    return Fraction(value)
  if isinstance(value, str):
    match = _RATIONAL_RE.match(value)
    if match is None:
      raise InvalidRational(f'Cannot parse rational from {value!r}')
    numerator, denominator = match.group(1), match.group(2)
    if denominator is not None and int(denominator) == 0:
      raise InvalidRational(f'Zero denominator in {value!r}')
    return Fraction(int(numerator), int(denominator or 1))
  raise InvalidRational(f'Unsupported rational value {value!r} of type {type(value).__name__}')


def parse_rational_list(text):
  """Parses a comma separated list such as "1,-1/2,3"."""
  if isinstance(text, (list, tuple)):
    return [parse_rational(item) for item in text]
  text = text.strip()
  if not text:
    return []
  return [parse_rational(item) for item in text.split(',')]


def format_rational(value):
  """Serializes a rational as a bare integer or a "p/q" string in lowest terms."""
  value = Fraction(value)
  if value.denominator == 1:
    return value.numerator
  return f'{value.numerator}/{value.denominator}'


def format_rational_list(values):
  return [format_rational(v) for v in values]


def parse_integer(value, what='value'):
  """Parses an exact integer.

  Args:
    value (int, float, str or Fraction): Integral floats and fractions are accepted.
    what (str): Field name used in the error message.

  Returns:
    int: The value.

  Raises:
    InputError: If `value` is a bool or not an integer.
  """
  if isinstance(value, bool):
    raise InputError(f'{what} must be an integer, got {value!r}')
  if isinstance(value, str):
    value = parse_rational(value)
  try:
    integer = int(value)
  except (TypeError, ValueError, OverflowError) as e:
    raise InputError(f'{what} must be an integer, got {value!r}') from e
  if integer != value:
    raise InputError(f'{what} must be an integer, got {value!r}')
  return integer
