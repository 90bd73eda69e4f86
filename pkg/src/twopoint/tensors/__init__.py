from twopoint.tensors.linalg import MAX_CONDITION, condition_number, invert_matrix, raise_first_index
from twopoint.tensors.sym import SymTensor, sym_get, symmetrize

__all__ = (
    "SymTensor",
    "sym_get",
    "symmetrize",
    "invert_matrix",
    "condition_number",
    "raise_first_index",
    "MAX_CONDITION",
)
