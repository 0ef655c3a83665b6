from flask_caching import Cache

# Memoizes census and synthesis payloads
cache = Cache()


def init_extensions(app):
    """Initialize extensions with app context"""
    cache.init_app(app, config={
        'CACHE_TYPE': app.config.get('CACHE_TYPE', 'SimpleCache'),
        'CACHE_DEFAULT_TIMEOUT': app.config.get('CACHE_DEFAULT_TIMEOUT', 300)
    })
