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
"""Errors raised by surface-sections"""


class SurfaceSectionsError(ValueError):
  """Base class of every error raised by this package."""


class MathematicalError(SurfaceSectionsError):
  """The input is well formed but the requested invariant is undefined for it."""


class InputError(SurfaceSectionsError):
  """The input could not be parsed or violates a structural requirement."""


class NotPseudoEffective(MathematicalError):
  pass


class NotBig(MathematicalError):
  pass


class NotFinite(MathematicalError):
  pass


class CurveInAugmentedLocus(MathematicalError):
  pass


class ModelInconsistent(MathematicalError):
  """Raised when the declared generators cannot be a complete set of curves."""


class CapExceededInconclusive(MathematicalError):
  """Raised when an oracle scan neither stabilizes nor keeps growing before its cap."""


class DimensionMismatch(InputError):
  pass


class InvalidModel(InputError):
  pass


class InvalidRational(InputError):
  pass


class UnknownCurve(InputError):
  pass


class NonPrimitiveRay(InputError):
  pass


class NotComplete(InputError):
  pass


class NotSmooth(InputError):
  pass
