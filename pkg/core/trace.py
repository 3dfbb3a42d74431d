import threading
from typing import Dict, List


class Trace:
    """Ordered record of what each pipeline stage did, as plain dict events."""

    def __init__(self):
        self.events: List[Dict] = []
        self.lock = threading.RLock()

    def __len__(self) -> int:
        return len(self.events)

    def __iter__(self):
        return iter(list(self.events))

    def add(self, stage: str, **data) -> Dict:
        event = {"stage": stage}
        event.update(data)
        with self.lock:
            self.events.append(event)
        return event

    def of_stage(self, stage: str) -> List[Dict]:
        return [event for event in self.events if event["stage"] == stage]

    @property
    def errors(self) -> List[Dict]:
        return self.of_stage("error")

    def level_counts(self) -> Dict[str, int]:
        """Transfer levels of the clause-level pattern winners."""
        counts = {"idiomatic": 0, "valency": 0, "general": 0}
        for event in self.of_stage("pattern"):
            if event.get("scope") == "clause":
                counts[event["level"]] = counts.get(event["level"], 0) + 1
        return counts

    def lines(self) -> List[str]:
        lines = []
        for event in self.events:
            details = " ".join(f"{key}={value}" for key, value in event.items() if key != "stage")
            lines.append(f"[{event['stage']}] {details}")
        return lines

    def to_list(self) -> List[Dict]:
        return [dict(event) for event in self.events]
