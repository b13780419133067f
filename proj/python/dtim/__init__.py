# Copyright 2026 The DTIM Authors.
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

"""Diversity-sensitive targeted influence maximization."""

from ._dtim import (
    AdmissibilityError,
    ConvergenceError,
    DiffusionGraph,
    DomainError,
    EmptyGraphError,
    EnumerationLimitError,
    Error,
    ParseError,
    SocialGraph,
    __version__,
    build_diffusion,
    centrality,
    example2,
    exact_capital,
    load_edge_list,
    lurker_rank,
    parse_edge_list,
    ris_select,
    seed_overlap,
    select,
    select_targets,
    simulate,
    spearman,
)

__all__ = [
    "AdmissibilityError",
    "ConvergenceError",
    "DiffusionGraph",
    "DomainError",
    "EmptyGraphError",
    "EnumerationLimitError",
    "Error",
    "ParseError",
    "SocialGraph",
    "__version__",
    "build_diffusion",
    "centrality",
    "example2",
    "exact_capital",
    "load_edge_list",
    "lurker_rank",
    "parse_edge_list",
    "ris_select",
    "seed_overlap",
    "select",
    "select_targets",
    "simulate",
    "spearman",
]
