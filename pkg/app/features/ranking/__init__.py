"""Tie-broken ranks and region membership."""
