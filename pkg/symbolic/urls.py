from django.urls import path

from symbolic import views

urlpatterns = [
    path("api/toric/check/", views.check_toric, name="toric_check"),
    path("api/toric/lie/", views.lie_algebra, name="toric_lie"),
]
