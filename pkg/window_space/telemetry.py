"""OpenTelemetry tracing for window-space.

Tracing is off unless WINDOW_SPACE_TRACING_ENABLED is 'true'. When off, every
tracer handed out by get_tracer() is the API's no-op tracer, so instrumented
code pays nothing.

Environment Variables:
    WINDOW_SPACE_TRACING_ENABLED: Set to 'true' to enable tracing (default: false)
    WINDOW_SPACE_OTLP_ENDPOINT: OTLP/HTTP collector URL (default: http://localhost:4318)
    WINDOW_SPACE_SERVICE_NAME: service.name resource attribute (default: window-space)
"""

import logging
import os
from typing import Any

from opentelemetry import trace
from opentelemetry.exporter.otlp.proto.http.trace_exporter import OTLPSpanExporter
from opentelemetry.sdk.resources import SERVICE_NAME, Resource
from opentelemetry.sdk.trace import ReadableSpan, SpanProcessor, TracerProvider
from opentelemetry.sdk.trace.export import BatchSpanProcessor

from .constants import (
    DEFAULT_OTLP_ENDPOINT,
    DEFAULT_SERVICE_NAME,
    ENV_OTLP_ENDPOINT,
    ENV_SERVICE_NAME,
    ENV_TRACING_ENABLED,
)

logger = logging.getLogger(__name__)

MODULE_ATTRIBUTE = "window_space.module"

# Span names are "<module>.<operation>"
_KNOWN_MODULES = frozenset({"automata", "streaming", "exactspace", "classify", "decompose", "families", "cli"})


def is_tracing_enabled() -> bool:
    return os.getenv(ENV_TRACING_ENABLED, "false").lower() == "true"


def get_otlp_endpoint() -> str:
    return os.getenv(ENV_OTLP_ENDPOINT, DEFAULT_OTLP_ENDPOINT)


def get_service_name() -> str:
    return os.getenv(ENV_SERVICE_NAME, DEFAULT_SERVICE_NAME)


class ModuleTaggingProcessor(SpanProcessor):
    """Copies the span-name prefix into the window_space.module attribute.

    'classify.decide' is tagged 'classify', 'cli.measure' is tagged 'cli';
    spans from other instrumentation are tagged 'other'.
    """

    def on_start(self, span: Any, parent_context: Any = None) -> None:
        name = getattr(span, "name", None)
        if not isinstance(name, str) or not hasattr(span, "set_attribute"):
            return
        module = name.lower().partition(".")[0]
        span.set_attribute(MODULE_ATTRIBUTE, module if module in _KNOWN_MODULES else "other")

    def on_end(self, span: ReadableSpan) -> None:
        pass

    def shutdown(self) -> None:
        pass

    def force_flush(self, timeout_millis: int = 30000) -> bool:
        # Nothing is buffered here; the batch processor does the exporting.
        return True


_tracer_provider: TracerProvider | None = None


def initialize_tracing() -> TracerProvider | None:
    """Install the global tracer provider once.

    Returns:
        The provider when tracing is enabled, None otherwise. Repeated calls
        return the provider installed by the first one.
    """
    global _tracer_provider

    if not is_tracing_enabled():
        return None
    if _tracer_provider is not None:
        return _tracer_provider

    endpoint = f"{get_otlp_endpoint().rstrip('/')}/v1/traces"
    provider = TracerProvider(resource=Resource.create({SERVICE_NAME: get_service_name()}))
    # Tagging must run before export
    provider.add_span_processor(ModuleTaggingProcessor())
    provider.add_span_processor(BatchSpanProcessor(OTLPSpanExporter(endpoint=endpoint)))
    trace.set_tracer_provider(provider)

    _tracer_provider = provider
    logger.info(f"Tracing enabled, exporting to {endpoint}")
    return provider


def shutdown_tracing() -> None:
    """Flush pending spans; the CLI calls this before exiting."""
    global _tracer_provider

    if _tracer_provider is None:
        return
    _tracer_provider.shutdown()
    _tracer_provider = None


def get_tracer(name: str = "window_space") -> trace.Tracer:
    """Tracer for manual spans (no-op when tracing is disabled)."""
    return trace.get_tracer(name)
