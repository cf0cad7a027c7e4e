"""Tests for service modules.""" 