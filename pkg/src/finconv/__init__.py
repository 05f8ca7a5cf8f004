"""Finite pseudotopological spaces: filters, spaces, exponentials, pasting,
path components, convergence groups and reparametrisation schedules."""
