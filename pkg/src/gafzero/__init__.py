"""gafzero - zeros of Gaussian random holomorphic sections: simulation and exact variance."""

__version__ = "0.1.0"
