"""Graded cancellation toolkit for Leavitt path algebras and graded matrix rings"""
__version__ = "1.0.0"
