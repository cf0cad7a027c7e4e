"""
Unit test package initialization.
""" 