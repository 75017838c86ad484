

from .polyring import Rational
from .polyring import Monomial
from .polyring import Poly
from .polyring import poly_arith
from .polyring import poly_eval
from .polyring import poly_partial
from .polyring import poly_substitute
from .polyring import poly_linear_substitute
from .polyring import homogeneous_components
from .polyring import format_poly


from .sym import PolyOneForm
from .sym import PolyTwoTensor
from .sym import PolyDual
from .sym import d_sym
from .sym import second_derivative_sym
from .sym import coderiving_sym
from .sym import degree_op_sym
from .sym import degree_op_inverse_sym
from .sym import zero_map_sym
from .sym import s_sym
from .sym import naive_s_sym
from .sym import s_first_slot_sym
from .sym import scale_oneform_sym
from .sym import rota_baxter_sym
from .sym import double_product_sym
from .sym import counit_sym
from .sym import epsilon_sym
from .sym import line_integral_exact_sym
from .sym import square_zero_apply_sym
from .sym import format_oneform_sym
