from django.urls import path, include
from rest_framework.routers import SimpleRouter

from .views import ExistenceViewSet

router = SimpleRouter()
router.register(r'existence', ExistenceViewSet, basename='existence')

urlpatterns = [
    path('', include(router.urls)),
]
