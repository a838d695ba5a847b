import json
import logging
import time
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Union

from opentelemetry import trace

from .codes.library import group_from_document, list_bundled, read_code_file, read_network_file
from .codes.stabilizer import encoding_state
from .config import Settings, get_settings
from .enumerators.macwilliams import transform_for
from .enumerators.oracle import oracle_for_code
from .enumerators.scalar import (
    Convention,
    EnumeratorPair,
    distance,
    enumerators_by_counting,
    purity_check,
    shor_laflamme_weights,
)
from .errors import InputValidationError
from .models import ContractionResult, EnumeratorResult, PolynomialModel
from .network.dense import network_oracle
from .network.executor import contract_network
from .network.network import parse_network
from .network.planner import plan_contraction
from .network.report import DISTANCE_SCHEMES, code_report
from .polynomials.enum_poly import EnumPoly
from .polynomials.schemes import WeightScheme

logger = logging.getLogger(__name__)
tracer = trace.get_tracer(__name__)


def _is_network(path: Union[str, Path]) -> bool:
    """True for network files and bundled network names."""
    if not Path(path).is_file():
        return str(path) in list_bundled("networks")
    try:
        document = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError):
        return False
    return isinstance(document, dict) and ("legos" in document or "builder" in document)


def _weights(poly: EnumPoly, n: int):
    if poly.scheme.kind not in DISTANCE_SCHEMES:
        return None
    return [str(c) for c in shor_laflamme_weights(poly, n)]


def _result(pair: EnumeratorPair, convention: Convention, name: Optional[str], elapsed_ms: float, **extra):
    shown = pair.in_convention(convention)
    kind = pair.scheme.kind
    model = ContractionResult if "plan_strategy" in extra else EnumeratorResult
    return model(
        name=name,
        n=pair.n,
        k=pair.k,
        q=pair.q,
        scheme=kind.value,
        convention=convention.value,
        a=PolynomialModel(**shown.a.to_json()),
        b=PolynomialModel(**shown.b.to_json()),
        a_weights=_weights(shown.a, pair.n),
        b_weights=_weights(shown.b, pair.n),
        distance=distance(pair) if kind in DISTANCE_SCHEMES else None,
        pure=purity_check(pair),
        elapsed_ms=round(elapsed_ms, 3),
        **extra,
    )


class EnumeratorService:
    """Runs the enumeration, contraction, transform and oracle commands"""

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or get_settings()

    def enumerate_code(
        self,
        path: Union[str, Path],
        scheme: str = "shor-laflamme",
        convention: str = "count",
        threads: Optional[int] = None,
        encoding: bool = False,
    ) -> EnumeratorResult:
        """A and B of a code file by stabilizer/normalizer counting"""
        started = time.perf_counter()
        document = read_code_file(path)
        group, frame = group_from_document(document)
        if encoding:
            group, frame = encoding_state(group, frame), None
        weight_scheme = WeightScheme(scheme, group.q)

        with tracer.start_as_current_span("enumerate") as span:
            span.set_attribute("code.n", group.n)
            span.set_attribute("code.k", group.k)
            span.set_attribute("scheme", weight_scheme.kind.value)
            pair = enumerators_by_counting(
                group,
                weight_scheme,
                frame,
                cap=self.settings.group_cap,
                threads=threads or self.settings.threads,
            )
        elapsed = (time.perf_counter() - started) * 1000
        logger.info(f"Enumerated {document.name or path} in {elapsed:.1f}ms")
        return _result(pair, Convention.parse(convention), document.name, elapsed)

    def contract(
        self,
        path: Union[str, Path],
        scheme: Optional[str] = None,
        convention: str = "count",
        plan: Optional[str] = None,
        threads: Optional[int] = None,
        mem_cap: Optional[int] = None,
    ) -> Tuple[ContractionResult, EnumPoly]:
        """Contract a network file; returns the report and the count-convention A for CSV export"""
        started = time.perf_counter()
        document = read_network_file(path)
        if scheme:
            document = document.model_copy(update={"scheme": scheme})
        network = parse_network(document)

        with tracer.start_as_current_span("contract") as span:
            span.set_attribute("network.legos", len(network.legos))
            span.set_attribute("network.n", network.n)
            contraction_plan = self._plan(network, plan)
            span.set_attribute("plan.width", contraction_plan.width)
            outcome = contract_network(
                network,
                contraction_plan,
                threads=threads or self.settings.threads,
                mem_cap=mem_cap or self.settings.mem_cap,
                group_cap=self.settings.group_cap,
            )
            report = code_report(network, outcome)

        elapsed = (time.perf_counter() - started) * 1000
        result = _result(
            report.pair,
            Convention.parse(convention),
            network.name,
            elapsed,
            plan_strategy=contraction_plan.strategy.value,
            plan_width=contraction_plan.width,
            observed_width=outcome.observed_width,
            steps=list(outcome.steps),
            mw_cross_check=report.mw_cross_check,
            factoring_legs=report.factoring,
        )
        return result, report.pair.a

    def _plan(self, network, plan: Optional[str]):
        if plan is None:
            return plan_contraction(network, tokens=network.plan) if network.plan else plan_contraction(network)
        if plan in ("greedy", "input_order", "input-order"):
            return plan_contraction(network, plan)
        try:
            tokens = json.loads(Path(plan).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            raise InputValidationError(f"Cannot read plan file {plan}: {e}") from e
        if not isinstance(tokens, list) or not all(isinstance(t, str) for t in tokens):
            raise InputValidationError(f"Plan file {plan} must hold a JSON list of step strings")
        return plan_contraction(network, tokens=tokens)

    def macwilliams(
        self,
        path: Union[str, Path],
        n: Optional[int] = None,
        k: int = 0,
        convention: str = "count",
    ) -> Dict[str, Any]:
        """Transform an A polynomial file into B in the same convention"""
        try:
            document = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            raise InputValidationError(f"Cannot read polynomial file {path}: {e}") from e
        poly = EnumPoly.from_json(document.get("a", document) if isinstance(document, dict) else document)
        if n is not None and poly.homogeneous_degree() != n:
            poly = poly.homogenize(n)
        convention = Convention.parse(convention)
        b = transform_for(poly.scheme).apply(poly)
        # raw B = MW(raw A); in count form the q^k factors leave q^k behind
        if convention is Convention.COUNT:
            b = b.scale(poly.scheme.q**k)
        logger.info(f"MacWilliams transform in {poly.scheme} ({convention.value}, k={k})")
        return {"convention": convention.value, "k": k, "a": poly.to_json(), "b": b.to_json()}

    def distance(self, path: Union[str, Path], threads: Optional[int] = None) -> Dict[str, Any]:
        """Distance from a code file or from an enumerator result document"""
        document = None
        if Path(path).is_file():
            try:
                document = json.loads(Path(path).read_text(encoding="utf-8"))
            except json.JSONDecodeError as e:
                raise InputValidationError(f"{path}: invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from e
        if isinstance(document, dict) and "a" in document and "b" in document:
            try:
                pair = EnumeratorPair(
                    a=EnumPoly.from_json(document["a"]),
                    b=EnumPoly.from_json(document["b"]),
                    n=int(document["n"]),
                    k=int(document["k"]),
                    q=int(document.get("q", 2)),
                    convention=Convention.parse(document.get("convention", "count")),
                )
            except (KeyError, TypeError, ValueError) as e:
                raise InputValidationError(f"{path}: enumerator document needs a, b, n and k ({e})") from e
            if pair.scheme.kind not in DISTANCE_SCHEMES:
                raise InputValidationError(f"Distance needs a Shor-Laflamme or complete enumerator, got {pair.scheme}")
            return {"n": pair.n, "k": pair.k, "distance": distance(pair)}
        result = self.enumerate_code(path, threads=threads)
        return {"n": result.n, "k": result.k, "distance": result.distance}

    def oracle(self, path: Union[str, Path], scheme: str = "shor-laflamme", convention: str = "raw") -> Dict[str, Any]:
        """Dense-matrix enumerators of a code file or a small network file"""
        max_sites = self.settings.oracle_max_sites
        if _is_network(path):
            network = parse_network(read_network_file(path))
            outcome = network_oracle(network, WeightScheme(scheme, network.q), max_sites=max_sites)
            name = network.name
        else:
            code = read_code_file(path)
            group, _ = group_from_document(code)
            outcome = oracle_for_code(group, WeightScheme(scheme, group.q), max_sites=max_sites)
            name = code.name
        pair = outcome.pair.in_convention(convention)
        return {
            "name": name,
            "n": pair.n,
            "k": pair.k,
            "q": pair.q,
            "convention": Convention.parse(convention).value,
            "a": pair.a.to_json(),
            "b": pair.b.to_json(),
            "residual": outcome.residual,
        }
