'''Exact group-theoretic toolkit for n x n x n sticker cubes.'''

__version__ = '0.1.0'
