"""Ball intersection models on real trees and valid distance drawings of signed graphs."""

from .ball_models import (
    Ball,
    BallModel,
    Graph,
    balls_intersect,
    intersection_graph,
    is_proper_model,
    is_unit_model,
    slack,
    validate_model,
)
from .errors import InvalidDrawing, InvalidInput, ModelMismatch, ScfeError, TransformStuck
from .metric_tree import Location, RealTree, attach_branch, center, distance, on_edge, point_at
from .model_transforms import nsi_to_unit, to_proper_nsi, to_unit_nsi, unit_to_proper, unkiss_model
from .pipeline import drawing_from_unit_model, model_from_drawing, roundtrip_check, solve_complete
from .signed_graphs import Drawing, SignedGraph, check_valid_drawing, positive_subgraph

__version__ = "0.1.0"
