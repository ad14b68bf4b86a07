"""Exact homology and Massey operadic products for finite colored dg operad fragments."""

from .errors import (FragmentAxiomError, IncompleteFragmentError, InputError, MasseyUndefinedError,
                     NotACycleError, ParseError, SemanticError, UnsupportedCharacteristicError)
from .exactla import FieldSpec, Matrix, ModP, Subspace, image, kernel, member, quotient_basis, solve
from .fixtures import SwissCheeseFragmentSpec, build_sc_fragment, build_sc_homology
from .freeop import FreeOperad, act_free, derive, graft, normal_form, verify_change_of_representatives
from .homology import class_of, homology, induced_compose, push_class
from .massey import (eye_obstruction, massey_I, massey_II, nonformality_certificate, pushforward_check,
                     vanishes)
from .operadcore import (Element, FragmentBuilder, OperadFragment, OperadMorphism, Permutation, Profile,
                         act, apply_morphism, boundary, compose, slot_for, validate, validate_morphism)

__version__ = "0.1.0"
