# Vérification numérique : cocycles de courants, Chern-Simons, flot spectral
