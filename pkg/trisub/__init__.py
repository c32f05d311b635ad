from trisub.config import Config, Configurable
from trisub.exact import CevaTuple, Rational, Triangle, make_triangle, make_tuple
