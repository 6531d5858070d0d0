"""Mutual-visibility, total mutual-visibility and visibility colorings of hypercubes."""

__version__ = "0.1.0"

from .cube import (VertexSet, dist, from_bits, interval_members, is_mv_set, is_total_mv_direct,
                   is_visible, layer, mv_violation, to_bits)
from .daisy import (DaisyPattern, LayerFamily, TuranRecord, contains_daisy, expand,
                    greedy_daisy_free, monotonicity_check, turan_exact)
from .construction import (BoundReport, LayeredConstruction, best_mlambda, build_mlambda,
                           claim1_path, construct, euler_product_lower, find_hole,
                           theorem1_constant_check, theorem2_bound, through_point_path,
                           witness_path)
from .coloring import (Coloring, LLLReport, blocking_triple_witness, layered_coloring,
                       lll_feasibility, moser_tardos_repair, verify_coloring)
from .total import (TotalMVConstruction, WeightClass, avoids_distance2, build_AB,
                    counting_upper_check, hamming_code, position_norm, total_mv_partition,
                    weight_classes)
from .exact import (SolveResult, chromatic_mv, chromatic_total_mv, max_mv, max_total_mv)
