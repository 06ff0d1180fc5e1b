"""Hierarquia de exceções do pacote."""


class WalshError(ValueError):
    """Erro base de todas as operações do pacote."""


class ResolutionError(WalshError):
    """Resolução inválida ou incompatível entre operandos."""


class DomainError(WalshError):
    """Ordem, frequência ou expoente fora do domínio permitido."""


class PreconditionError(WalshError):
    """Hipótese de um teorema não satisfeita (ex.: monotonicidade dos pesos)."""


class FormatError(WalshError):
    """Falha ao interpretar um arquivo CSV ou um descritor textual."""


class DegenerateDataError(WalshError):
    """Dados insuficientes para um ajuste ou relatório."""
