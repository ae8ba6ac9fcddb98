# Copyright 2026 The nmqw authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""BLP non-Markovianity from N^2 prepared-state dynamics.

The heavy lifting lives in the compiled extension; this package re-exports
its public surface.
"""

from nmqw._core import *  # noqa: F401,F403
from nmqw import _core as core  # noqa: F401

__version__ = "0.1.0"
