from typing import Optional

from opentelemetry import trace
from opentelemetry.sdk.resources import Resource
from opentelemetry.sdk.trace import TracerProvider
from opentelemetry.sdk.trace.export import BatchSpanProcessor

_configured = False


def setup_tracing(service_name: str, jaeger_host: Optional[str] = None, jaeger_port: int = 6831):
    """Setup OpenTelemetry tracing; spans are exported only when a Jaeger host is set"""
    global _configured
    if not _configured:
        provider = TracerProvider(resource=Resource.create({"service.name": service_name}))
        if jaeger_host:
            from opentelemetry.exporter.jaeger.thrift import JaegerExporter

            jaeger_exporter = JaegerExporter(agent_host_name=jaeger_host, agent_port=jaeger_port)
            provider.add_span_processor(BatchSpanProcessor(jaeger_exporter))
        trace.set_tracer_provider(provider)
        _configured = True
    return trace.get_tracer(service_name)


def get_tracer(name: str):
    return trace.get_tracer(name)
