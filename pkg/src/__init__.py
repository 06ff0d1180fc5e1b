"""Análise de Walsh-Fourier no grupo diádico e verificação de médias de Nörlund."""
