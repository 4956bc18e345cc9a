"""
Test suite for ccdep.
"""
