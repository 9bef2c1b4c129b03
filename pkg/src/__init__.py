"""k-Edge Colouring on H-free graphs: recognition, exact solvers, hardness gadgets"""
