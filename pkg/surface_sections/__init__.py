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
"""Exact Zariski decompositions and finiteness of sections on surface complements."""

from surface_sections.python.errors import (SurfaceSectionsError, MathematicalError, InputError,
                                            NotPseudoEffective, NotBig, NotFinite,
                                            CurveInAugmentedLocus, ModelInconsistent,
                                            CapExceededInconclusive, DimensionMismatch,
                                            InvalidModel, InvalidRational, UnknownCurve,
                                            NonPrimitiveRay, NotComplete, NotSmooth)
from surface_sections.python.lattice.ns_lattice import (NSClass, CurveGenerator, SurfaceModel,
                                                        pair, validate_model, is_pseudo_effective,
                                                        is_nef, load_model)
from surface_sections.python.lattice.zariski import (zariski_decompose, volume, kappa_sigma,
                                                     diminished_divisorial,
                                                     augmented_contains_curve,
                                                     restricted_volume, chamber_walk, KappaSigma)
from surface_sections.python.lattice.finiteness import (BoundaryDivisor, classify_big,
                                                        classify_pseff, minimal_a_bplus,
                                                        minimal_a_nsigma, growth_estimate,
                                                        rr_lower_bound, rr_infiniteness_test,
                                                        Status)
from surface_sections.python.toric.toric_oracle import (ToricFan, ToricDivisor, build_fan,
                                                        load_fan, fan_to_surface_model,
                                                        count_h0, oracle_volume, h0_limit_scan)
from surface_sections.python.toric.verification import verify_suite
from .version import __version__
