"""Line-oriented execution trace."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable


def render_value(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, list):
        return "[" + ",".join(render_value(v) for v in value) + "]"
    return str(value)


@dataclass(frozen=True)
class TraceRecord:
    kind: str
    fields: tuple[str, ...]

    def __str__(self) -> str:
        return " ".join((self.kind,) + self.fields)


class Trace:
    """Append-only list of records.  ``sink`` sees every record as it is added."""

    def __init__(self, sink: Callable[[TraceRecord], None] | None = None):
        self.records: list[TraceRecord] = []
        self.sink = sink

    def add(self, kind: str, *fields: str) -> TraceRecord:
        record = TraceRecord(kind, tuple(fields))
        self.records.append(record)
        if self.sink is not None:
            self.sink(record)
        return record

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def lines(self) -> list[str]:
        return [str(r) for r in self.records]

    def render(self) -> str:
        return "".join(line + "\n" for line in self.lines())

    def of_kind(self, kind: str) -> list[TraceRecord]:
        return [r for r in self.records if r.kind == kind]

    # record builders

    def create(self, instance: str, configuration: str, gaproc: str):
        return self.add("CREATE", instance, "CONFIG", configuration, "PROC", gaproc)

    def state(self, gaprog: str, behavior: str | None):
        return self.add("STATE", gaprog, "BEHAVIOR", behavior or "-")

    def actions(self, order: Iterable) -> None:
        for mode, feature in order:
            self.add("ENABLE" if mode.value == "Enable" else "DISABLE", feature)

    def event(self, name: str):
        return self.add("EVENT", name)

    def warn(self, code: str, detail: str):
        return self.add("WARN", code, detail)

    def metamorphose(self, program: str, configuration: str):
        return self.add("METAMORPHOSE", program, "TO", configuration)

    def exec(self, feature: str, value, output):
        return self.add("EXEC", feature, "IN", render_value(value), "OUT", render_value(output))

    def error(self, code: str, detail: str):
        return self.add("ERROR", code, detail)

    def snapshot(self, enabled: Iterable[str], store: dict):
        names = ",".join(sorted(enabled))
        entries = ",".join(f"{k}={render_value(store[k])}" for k in sorted(store))
        return self.add("SNAPSHOT", f"enabled=[{names}]", f"store={{{entries}}}")
