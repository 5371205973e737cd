"""Long-audio transcription pipeline and tooling.

Subpackages cover each pipeline stage (media conversion, voice activity
detection, speaker diarisation, the ASR engine boundary, capitalisation and
punctuation restoration), plus the offline semi-supervised toolbox, the
evaluation metrics, and the job orchestration service.
"""

__version__ = "0.1.0"
