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
"""Shipped fixtures: fans of P^2, the blow-up of P^2 at a point, F_0 and F_2, and the surface
models exported from them."""

import os

from surface_sections.python.lattice import ns_lattice
from surface_sections.python.toric import toric_oracle

FIXTURE_DIR = os.path.dirname(os.path.realpath(__file__))
NAMES = ('p2', 'blp2', 'f0', 'f2')


def fan_path(name):
  return os.path.join(FIXTURE_DIR, 'fans', f'{name}.json')


def model_path(name):
  return os.path.join(FIXTURE_DIR, 'models', f'{name}.json')


def load_fan(name):
  return toric_oracle.load_fan(fan_path(name))


def load_model(name):
  return ns_lattice.load_model(model_path(name))
