"""Atomic lengths of (affine) Weyl group elements and their universality,
checked at desk scale: entropy of affine permutations, quadratic-form
representation scans, Hall-type difference sets, core multipartitions, and
finite-type saturation."""

__version__ = "0.1.0"
