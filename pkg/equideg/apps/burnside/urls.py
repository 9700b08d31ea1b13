from django.urls import path, include
from rest_framework.routers import SimpleRouter

from .views import BurnsideViewSet

router = SimpleRouter()
router.register(r'burnside', BurnsideViewSet, basename='burnside')

urlpatterns = [
    path('', include(router.urls)),
]
