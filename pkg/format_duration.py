def format_duration(seconds: float) -> str:
    """Compact elapsed time, e.g. "2m 5s", "1h 3m", "0.42s"."""
    if seconds < 60:
        return f"{seconds:.2f}s"
    total_seconds = int(seconds)
    hours, remainder = divmod(total_seconds, 3600)
    minutes, seconds = divmod(remainder, 60)
    parts = []
    if hours:
        parts.append(f"{hours}h")
    if minutes:
        parts.append(f"{minutes}m")
    if seconds and not hours:
        parts.append(f"{seconds}s")
    return ' '.join(parts)
