from .hello_views import hello
