import sys
import traceback
from typing import Optional, cast


class PospaceLabException(Exception):
    def __init__(self, error_message, error_details: Optional[object] = None):
        norm_msg = str(error_message)

        # Resolve exc_info (supports: sys module, Exception object, or current context)
        exc_type = exc_value = exc_tb = None
        if error_details is None:
            exc_type, exc_value, exc_tb = sys.exc_info()
        elif hasattr(error_details, "exc_info"):  # e.g., sys
            exc_info_obj = cast(sys, error_details)
            exc_type, exc_value, exc_tb = exc_info_obj.exc_info()
        elif isinstance(error_details, BaseException):
            exc_type, exc_value, exc_tb = type(error_details), error_details, error_details.__traceback__
        else:
            exc_type, exc_value, exc_tb = sys.exc_info()

        # Walk to the last frame to report the most relevant location
        last_tb = exc_tb
        while last_tb and last_tb.tb_next:
            last_tb = last_tb.tb_next

        if last_tb is not None:
            self.file_name = last_tb.tb_frame.f_code.co_filename
            self.lineno = last_tb.tb_lineno
        else:
            caller = sys._getframe(1)
            while caller.f_back is not None and caller.f_code.co_filename == __file__:
                caller = caller.f_back
            self.file_name = caller.f_code.co_filename
            self.lineno = caller.f_lineno
        self.error_message = norm_msg

        if exc_type and exc_tb:
            self.traceback_str = "".join(traceback.format_exception(exc_type, exc_value, exc_tb))
        else:
            self.traceback_str = ""

        super().__init__(self.__str__())

    def __str__(self):
        base = f"Error in [{self.file_name}] at line [{self.lineno}] | Message: {self.error_message}"
        if self.traceback_str:
            return f"{base}\nTraceback:\n{self.traceback_str}"
        return base

    def __repr__(self):
        return f"{type(self).__name__}(file={self.file_name!r}, line={self.lineno}, message={self.error_message!r})"


class MorphismMismatchError(PospaceLabException):
    """Maps that do not compose, are not parallel, or are applied off their domain."""


class AnchorMismatchError(PospaceLabException):
    """Objects over different anchors, or a map that does not commute with them."""


class InvalidPospaceError(PospaceLabException):
    def __init__(self, error_message, report=None, error_details: Optional[object] = None):
        self.report = report
        super().__init__(error_message, error_details)


class ConstructionError(PospaceLabException):
    """A construction was called outside its preconditions."""


class SizeGuardExceeded(PospaceLabException):
    def __init__(self, bound: int, context: str = "", error_details: Optional[object] = None):
        self.bound = bound
        self.context = context
        super().__init__(f"search space exceeds max_maps={bound} ({context})", error_details)


class ModelFormatError(PospaceLabException):
    def __init__(self, error_message, line: int | None = None, source: str | None = None,
                 error_details: Optional[object] = None):
        self.line = line
        self.source = source
        where = f"{source or '<text>'}:{line}" if line is not None else (source or "<text>")
        super().__init__(f"{where}: {error_message}", error_details)
