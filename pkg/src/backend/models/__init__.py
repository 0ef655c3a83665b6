"""
Domain value types for marks, tiles, symbols, dominoes, blocks and patches.
"""
