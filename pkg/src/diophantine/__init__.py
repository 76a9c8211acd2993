"""Pell sequences, Diophantine formula compilation and the power function."""

from diophantine.formula import compile_formula
from diophantine.pell import PellBase, pell_pair
from diophantine.poly import Poly
from diophantine.zsqrtd import QuadInt

__all__ = ["PellBase", "Poly", "QuadInt", "compile_formula", "pell_pair"]
