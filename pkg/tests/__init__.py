"""
Test suite for twobit-ldpc
"""
