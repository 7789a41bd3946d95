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
"""Setup script for surface-sections"""

import os
from setuptools import setup, find_packages

abspath = os.path.dirname(os.path.realpath(__file__))

with open(os.path.join(abspath, "requirements.txt"), encoding="utf-8") as f:
  requirements = [line for line in f.read().splitlines() if line.strip()]  # pylint: disable=invalid-name

license_header = """#
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
#
"""

# Generate version file
with open(os.path.join(abspath, "version.txt"), encoding="utf-8") as f:
  version = f.read().strip()
with open(os.path.join(abspath, "surface_sections/version.py"), "w", encoding="utf-8") as f:
  f.write(license_header)
  f.write(F"__version__ = \"{version}\"\n")

setup(
    name="surface-sections",
    version=version,
    description="Zariski decompositions, volumes and finiteness of sections on open surfaces",
    packages=find_packages(exclude=["*.tests", "*.tests.*", "tests.*", "tests"]),
    package_data={"surface_sections": ["fixtures/fans/*.json", "fixtures/models/*.json"]},
    install_requires=requirements,
    include_package_data=True,
    python_requires=">=3.9",
    entry_points={"console_scripts": ["surface-sections = surface_sections.python.cli:run"]},
    zip_safe=False,
)
