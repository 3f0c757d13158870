"""Exception hierarchy.

Every error that can end up in a results file carries a short ``code`` used
in the ``status`` column (``error:<code>``).
"""


class CommitteeLabError(Exception):
    code = "error"


class ConfigError(CommitteeLabError, ValueError):
    """Invalid parameters: bad committee size, unknown rule, malformed config."""

    code = "config"


class QuotaExhaustedError(CommitteeLabError):
    """STV cannot fill k seats because k * quota exceeds the number of voters."""

    code = "quota_exhausted"

    def __init__(self, n, k, quota):
        self.n, self.k, self.quota = n, k, quota
        super().__init__(
            f"not enough voters for STV: k*q = {k}*{quota} = {k * quota} > n = {n}"
        )


class InstanceTooLargeError(CommitteeLabError):
    """An exhaustive solver was asked to scan more committees than its budget."""

    code = "instance_too_large"
