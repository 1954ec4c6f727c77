"""Tests for telemetry module."""

import os
from unittest.mock import MagicMock, patch


class TestIsTracingEnabled:
    """Tests for is_tracing_enabled function."""

    def test_disabled_by_default(self):
        """Tracing should be disabled when env var is not set."""
        from window_space.telemetry import is_tracing_enabled

        with patch.dict(os.environ, {}, clear=True):
            assert is_tracing_enabled() is False

    def test_disabled_when_false(self):
        """Tracing should be disabled when explicitly set to false."""
        from window_space.telemetry import is_tracing_enabled

        with patch.dict(os.environ, {"WINDOW_SPACE_TRACING_ENABLED": "false"}):
            assert is_tracing_enabled() is False

    def test_enabled_case_insensitive(self):
        """WINDOW_SPACE_TRACING_ENABLED should be case-insensitive."""
        from window_space.telemetry import is_tracing_enabled

        with patch.dict(os.environ, {"WINDOW_SPACE_TRACING_ENABLED": "TRUE"}):
            assert is_tracing_enabled() is True

        with patch.dict(os.environ, {"WINDOW_SPACE_TRACING_ENABLED": "true"}):
            assert is_tracing_enabled() is True


class TestEndpointAndServiceName:
    """Tests for get_otlp_endpoint and get_service_name."""

    def test_defaults(self):
        from window_space.telemetry import get_otlp_endpoint, get_service_name

        with patch.dict(os.environ, {}, clear=True):
            assert get_otlp_endpoint() == "http://localhost:4318"
            assert get_service_name() == "window-space"

    def test_custom_values(self):
        from window_space.telemetry import get_otlp_endpoint, get_service_name

        env = {
            "WINDOW_SPACE_OTLP_ENDPOINT": "http://collector.example.com:4318",
            "WINDOW_SPACE_SERVICE_NAME": "window-space-ci",
        }
        with patch.dict(os.environ, env):
            assert get_otlp_endpoint() == "http://collector.example.com:4318"
            assert get_service_name() == "window-space-ci"


class TestModuleTaggingProcessor:
    """Tests for ModuleTaggingProcessor span processor."""

    def test_library_span_tagged_with_module(self):
        """'classify.decide' spans belong to the classify module."""
        from window_space.telemetry import MODULE_ATTRIBUTE, ModuleTaggingProcessor

        processor = ModuleTaggingProcessor()
        mock_span = MagicMock()
        mock_span.name = "classify.decide"

        processor.on_start(mock_span)

        mock_span.set_attribute.assert_called_with(MODULE_ATTRIBUTE, "classify")

    def test_cli_span(self):
        from window_space.telemetry import MODULE_ATTRIBUTE, ModuleTaggingProcessor

        processor = ModuleTaggingProcessor()
        mock_span = MagicMock()
        mock_span.name = "cli.measure"

        processor.on_start(mock_span)

        mock_span.set_attribute.assert_called_with(MODULE_ATTRIBUTE, "cli")

    def test_unknown_span_mapped_to_other(self):
        """Unknown prefixes should be mapped to 'other'."""
        from window_space.telemetry import MODULE_ATTRIBUTE, ModuleTaggingProcessor

        processor = ModuleTaggingProcessor()
        mock_span = MagicMock()
        mock_span.name = "http.request"

        processor.on_start(mock_span)

        mock_span.set_attribute.assert_called_with(MODULE_ATTRIBUTE, "other")

    def test_span_without_name_is_ignored(self):
        from window_space.telemetry import ModuleTaggingProcessor

        # Should not raise
        ModuleTaggingProcessor().on_start(object())

    def test_force_flush_returns_true(self):
        """force_flush should return True."""
        from window_space.telemetry import ModuleTaggingProcessor

        processor = ModuleTaggingProcessor()
        assert processor.force_flush() is True
        processor.on_end(MagicMock())
        processor.shutdown()


class TestInitializeTracing:
    """Tests for initialize_tracing function."""

    def test_returns_none_when_disabled(self):
        """Should return None when tracing is disabled."""
        from window_space.telemetry import initialize_tracing

        with patch.dict(os.environ, {"WINDOW_SPACE_TRACING_ENABLED": "false"}):
            assert initialize_tracing() is None

    @patch("window_space.telemetry.OTLPSpanExporter")
    @patch("window_space.telemetry.trace.set_tracer_provider")
    def test_initializes_when_enabled(self, mock_set_provider, mock_exporter):
        """Should initialize tracer provider when enabled."""
        import window_space.telemetry as telemetry_module

        telemetry_module._tracer_provider = None

        env = {"WINDOW_SPACE_TRACING_ENABLED": "true", "WINDOW_SPACE_OTLP_ENDPOINT": "http://custom:4318"}
        with patch.dict(os.environ, env):
            result = telemetry_module.initialize_tracing()

            assert result is not None
            mock_set_provider.assert_called_once()
            mock_exporter.assert_called_once_with(endpoint="http://custom:4318/v1/traces")

            # Second call reuses the provider
            assert telemetry_module.initialize_tracing() is result
            mock_set_provider.assert_called_once()

        # Reset for other tests
        telemetry_module._tracer_provider = None

    def test_trailing_slash_in_endpoint(self):
        """A trailing slash on the endpoint does not double up."""
        import window_space.telemetry as telemetry_module

        telemetry_module._tracer_provider = None
        env = {"WINDOW_SPACE_TRACING_ENABLED": "true", "WINDOW_SPACE_OTLP_ENDPOINT": "http://custom:4318/"}
        with (
            patch.dict(os.environ, env),
            patch("window_space.telemetry.OTLPSpanExporter") as mock_exporter,
            patch("window_space.telemetry.trace.set_tracer_provider"),
        ):
            telemetry_module.initialize_tracing()
            mock_exporter.assert_called_once_with(endpoint="http://custom:4318/v1/traces")
        telemetry_module._tracer_provider = None


class TestShutdownTracing:
    """Tests for shutdown_tracing function."""

    def test_noop_without_provider(self):
        import window_space.telemetry as telemetry_module

        telemetry_module._tracer_provider = None
        telemetry_module.shutdown_tracing()
        assert telemetry_module._tracer_provider is None

    def test_shuts_down_and_forgets_provider(self):
        """The provider is flushed once and a later initialize starts fresh."""
        import window_space.telemetry as telemetry_module

        provider = MagicMock()
        telemetry_module._tracer_provider = provider

        telemetry_module.shutdown_tracing()

        provider.shutdown.assert_called_once()
        assert telemetry_module._tracer_provider is None
