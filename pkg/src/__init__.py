"""sponge-dim: Assouad and lower dimensions of self-affine measures on diagonal sponges."""

__version__ = "1.0.0"
