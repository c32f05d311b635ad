import re
from typing import Any, Dict, List, Optional

import pandas as pd
import yaml


class Trace:
    """Utility class for handling traces."""

    def __init__(
        self, tracefile: Optional[str] = None, regex_filter: Optional[str] = None
    ):
        self.entries: List[Dict[str, Any]] = []
        if tracefile:
            self.load(tracefile, regex_filter)

    def load(self, tracefile: str, regex_filter: Optional[str] = None):
        matcher = re.compile(regex_filter) if regex_filter else None
        with open(tracefile, "r") as file:
            for line in file:
                if matcher and not matcher.search(line):
                    continue
                if not line.strip():
                    continue
                self.entries.append(yaml.load(line, Loader=yaml.SafeLoader))

    def filter(self, filter_dict: Dict[str, Any] = {}) -> List[Dict[str, Any]]:
        def predicate(entry):
            for key, value in filter_dict.items():
                if key not in entry or entry[key] != value:
                    return False
            return True

        return list(filter(predicate, self.entries))

    def last(
        self, event: str, job_id: Optional[str] = None
    ) -> Optional[Dict[str, Any]]:
        "The most recent entry of the given event (and job), if any."
        filter_dict = {"event": event}
        if job_id:
            filter_dict["job_id"] = job_id
        entries = self.filter(filter_dict)
        return entries[-1] if entries else None

    def to_dataframe(self, filter_dict: Dict[str, Any] = {}) -> pd.DataFrame:
        return pd.DataFrame(self.filter(filter_dict))
