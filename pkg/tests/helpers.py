from fractions import Fraction

from gmlab.algebra import build
from gmlab.exact import FieldSpec, Q
from gmlab.transposition import construct_model


def alg(model, eta=None, field=Q, force=False):
    sys = construct_model(model)
    if eta is None:
        eta = Fraction(-1, sys.p - 2)
    return build(sys, field, field(eta) if not isinstance(eta, str) else eta, force=force)


F13 = FieldSpec(13)
