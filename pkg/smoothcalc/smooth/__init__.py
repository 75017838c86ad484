

from .quadrature import QuadConfig
from .quadrature import QuadResult
from .quadrature import integrate_unit
from .quadrature import gauss_legendre_panel


from .expr import Expr
from .expr import Var
from .expr import Param
from .expr import Const
from .expr import Sum
from .expr import Product
from .expr import Power
from .expr import Negate
from .expr import Prim
from .expr import Integral
from .expr import ExprContext
from .expr import eval_expr
from .expr import eval_points
from .expr import partial_expr
from .expr import subst_linear
from .expr import subst_vector
from .expr import scale_expr
from .expr import from_poly
from .expr import simplify
from .expr import print_expr


from .modality import SmoothOneForm
from .modality import SmoothTwoTensor
from .modality import DualElement
from .modality import d_smooth
from .modality import d_twice
from .modality import coderiving_smooth
from .modality import op_LKJ_smooth
from .modality import inverse_smooth
from .modality import s_smooth
from .modality import s_first_slot
from .modality import zero_map
from .modality import scale_oneform
from .modality import directional_derivation
from .modality import counit
from .modality import epsilon
from .modality import rota_baxter_smooth
from .modality import double_product_smooth
from .modality import square_zero_apply
from .modality import is_closed
