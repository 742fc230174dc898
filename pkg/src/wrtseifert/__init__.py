"""WRT invariants of Seifert fibered integral homology spheres."""
