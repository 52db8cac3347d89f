"""Code metrics, error taxonomy, risk scoring and VSP/HSP team allocation."""

__version__ = "0.1.0"
