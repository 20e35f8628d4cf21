# Quantum-Torus Orbifold Calculator: configuration package
