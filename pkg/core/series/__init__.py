"""Series expansions around integer points: kernels, Taylor/Laurent, residues."""
